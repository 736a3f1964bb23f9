//! Batch evaluation helpers.
//!
//! The statistical suites and the benchmarks run thousands of independent
//! decisions; with the `parallel` feature (on by default) these fan out over
//! a rayon pool, otherwise they run sequentially. Work is always keyed by
//! index or seed, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::compat::{self, CompatibilityVerdict};
use crate::error::Result;
use crate::matcore::ComplexMatrix;
use crate::tol::Tolerances;

/// Maps `f` over `0..count`, in parallel when the `parallel` feature is on.
pub fn map_indexed<U, F>(count: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Sequential twin of [`map_indexed`], kept available in every build so the
/// benchmarks can compare the two directly.
pub fn map_indexed_serial<U, F>(count: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..count).map(f).collect()
}

/// Decides a batch of pairs (parallel when enabled).
pub fn decide_pairs(
    pairs: &[(ComplexMatrix, ComplexMatrix)],
    tol: &Tolerances,
) -> Vec<Result<CompatibilityVerdict>> {
    #[cfg(feature = "parallel")]
    {
        pairs
            .par_iter()
            .map(|(a, b)| compat::decide(a, b, tol))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        decide_pairs_serial(pairs, tol)
    }
}

/// Sequential twin of [`decide_pairs`].
pub fn decide_pairs_serial(
    pairs: &[(ComplexMatrix, ComplexMatrix)],
    tol: &Tolerances,
) -> Vec<Result<CompatibilityVerdict>> {
    pairs
        .iter()
        .map(|(a, b)| compat::decide(a, b, tol))
        .collect()
}
