//! Shared-metric compatibility analysis for non-Hermitian matrices with real
//! spectra.
//!
//! A non-Hermitian matrix `A` with a real nondegenerate spectrum is rendered
//! observable by any positive-definite metric `theta` satisfying
//! `A^dag theta = theta A`; a single matrix always has a whole family of
//! them, parametrized by strictly positive column scalings of its adjoint's
//! eigenvector factor. Two (or more) such matrices are *compatible* when the
//! families intersect, i.e. one shared metric renders them simultaneously
//! quasi-Hermitian.
//!
//! The crate decides that question constructively:
//!
//! - [`dyson`] validates spectra and builds per-observable metric families;
//! - [`compat`] reduces the intersection question to a homogeneous linear
//!   system with a positivity constraint and settles it with a max-margin
//!   feasibility program, returning a witness metric or a certificate;
//! - [`oracle`] certifies small instances by brute force, independently of
//!   the mixer-based path;
//! - [`genpair`] runs the criterion backwards to manufacture compatible
//!   sets with a planted shared metric;
//! - [`example`] bundles a closed-form 3x3 pair exercising the full pipeline,
//!   including an incompatible parameter point;
//! - [`batch`] fans independent decisions out over a thread pool (feature
//!   `parallel`, on by default) with a sequential fallback.

pub mod batch;
pub mod compat;
pub mod dyson;
pub mod error;
pub mod example;
pub mod genpair;
pub mod matcore;
pub mod oracle;
mod simplex;
pub mod tol;

pub use compat::{CompatibilityVerdict, Status};
pub use dyson::{MetricCandidate, ScalingVector, SpectralData};
pub use error::{Error, Result};
pub use matcore::{C64, ComplexMatrix};
pub use tol::Tolerances;
