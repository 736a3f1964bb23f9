//! Bundled one-parameter 3x3 example pair.
//!
//! `a1(s)` is real and asymmetric with spectrum `{0, -2s, 2s}`; `a2(a)` is
//! complex symmetric with spectrum `{0, -2 sqrt(1-a^2), 2 sqrt(1-a^2)}`. Both
//! are non-Hermitian for generic parameters yet carry real spectra, which
//! makes them a compact regression target for the whole pipeline. At
//! `s = a = 1/2` the pair admits no shared positive-definite metric.

use crate::error::{Error, Result};
use crate::matcore::{C64, ComplexMatrix};

fn real_band(v: f64, name: &str) -> Result<()> {
    if !v.is_finite() || v.abs() > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in [-1, 1], got {v}"
        )));
    }
    Ok(())
}

/// The real asymmetric member. Its adjoint is
/// `[[-2, b, 0], [-b, 0, b], [0, -b, 2]]` with `b = sqrt(2 - 2 s^2)`.
pub fn a1(s: f64) -> Result<ComplexMatrix> {
    real_band(s, "s")?;
    let b = (2.0 - 2.0 * s * s).sqrt();
    a1_dagger_rows(b).map(|m| m.adjoint())
}

fn a1_dagger_rows(b: f64) -> Result<ComplexMatrix> {
    ComplexMatrix::from_real_rows(&[
        vec![-2.0, b, 0.0],
        vec![-b, 0.0, b],
        vec![0.0, -b, 2.0],
    ])
}

/// The complex symmetric member. Its adjoint is
/// `[[-2ia, r, 0], [r, 0, r], [0, r, 2ia]]` with `r = sqrt(2)`.
pub fn a2(a: f64) -> Result<ComplexMatrix> {
    real_band(a, "a")?;
    let r = 2f64.sqrt();
    let z = C64::new(0.0, 0.0);
    let rr = C64::new(r, 0.0);
    let adjoint = ComplexMatrix::from_rows(&[
        vec![C64::new(0.0, -2.0 * a), rr, z],
        vec![rr, z, rr],
        vec![z, rr, C64::new(0.0, 2.0 * a)],
    ])?;
    Ok(adjoint.adjoint())
}

/// Both members at once.
pub fn pair(s: f64, a: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    Ok((a1(s)?, a2(a)?))
}

/// Closed-form eigenvector concatenation for the adjoint of `a1(s)`, in the
/// reference normalization used by the bundled regression data. Columns pair
/// with the eigenvalues `(0, -2s, 2s)` in that order.
pub fn reference_omega1_dagger(s: f64) -> Result<ComplexMatrix> {
    real_band(s, "s")?;
    let b = (2.0 - 2.0 * s * s).sqrt();
    let s2 = s * s;
    ComplexMatrix::from_real_rows(&[
        vec![-2.0 + 2.0 * s2, 2.0 * s + 1.0 + s2, -2.0 * s + 1.0 + s2],
        vec![-2.0 * b, b * (s + 1.0), -b * (s - 1.0)],
        vec![-2.0 + 2.0 * s2, 1.0 - s2, 1.0 - s2],
    ])
}

/// Reference eigenvector concatenation for the adjoint of `a2(1/2)`, columns
/// pairing with the eigenvalues `(0, -sqrt(3), sqrt(3))` in that order.
pub fn reference_omega2_dagger_half() -> ComplexMatrix {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r6 = r2 * r3;
    ComplexMatrix::from_rows(&[
        vec![
            C64::new(1.5, 0.0),
            C64::new(3.0 / 8.0, 3.0 / 8.0 * r3),
            C64::new(3.0 / 8.0, -3.0 / 8.0 * r3),
        ],
        vec![
            C64::new(0.0, 0.75 * r2),
            C64::new(-3.0 / 8.0 * r6, -3.0 / 8.0 * r2),
            C64::new(3.0 / 8.0 * r6, -3.0 / 8.0 * r2),
        ],
        vec![
            C64::new(-1.5, 0.0),
            C64::new(0.75, 0.0),
            C64::new(0.75, 0.0),
        ],
    ])
    .expect("fixed 3x3 shape")
}
