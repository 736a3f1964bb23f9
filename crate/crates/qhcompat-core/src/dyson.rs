//! Per-observable spectral analysis.
//!
//! [`analyze`] validates that an observable has a real, nondegenerate
//! spectrum and packages the eigenvectors of its adjoint into the factor
//! whose Gram products generate the observable's whole family of admissible
//! metrics. Column phases are canonicalized (largest-modulus component made
//! real positive) so repeated runs produce identical factors; the physical
//! per-column freedom is carried explicitly by [`ScalingVector`].

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::matcore::{C64, ComplexMatrix};
use crate::tol::Tolerances;

/// Strictly positive diagonal scalings. Entries are the *squared* column
/// factors, i.e. the diagonal of `c^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingVector {
    values: Array1<f64>,
}

impl ScalingVector {
    pub fn new(values: Array1<f64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidScaling);
        }
        Ok(Self { values })
    }

    /// The all-ones scaling (the arbitrary reference normalization).
    pub fn ones(n: usize) -> Self {
        Self { values: Array1::ones(n) }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The squared factors `c^2`.
    pub fn values(&self) -> &Array1<f64> {
        &self.values
    }

    /// Entrywise square roots, i.e. the factors `c` themselves.
    pub fn sqrt(&self) -> Array1<f64> {
        self.values.mapv(f64::sqrt)
    }

    /// Multiplies every entry by `t > 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.values.mapv(|v| v * t))
    }
}

/// Validated spectral decomposition of one observable's adjoint.
#[derive(Debug, Clone)]
pub struct SpectralData {
    eigenvalues: Array1<f64>,
    omega_dagger: ComplexMatrix,
    source: ComplexMatrix,
}

impl SpectralData {
    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &Array1<f64> {
        &self.eigenvalues
    }

    /// Columns are the eigenvectors of the adjoint of the source, unit norm,
    /// phase-fixed, ordered like [`Self::eigenvalues`].
    pub fn omega_dagger(&self) -> &ComplexMatrix {
        &self.omega_dagger
    }

    /// The corresponding map itself (adjoint of [`Self::omega_dagger`]).
    pub fn omega(&self) -> ComplexMatrix {
        self.omega_dagger.adjoint()
    }

    /// The observable this decomposition came from.
    pub fn source(&self) -> &ComplexMatrix {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// One admissible metric `theta = omega^dag c^2 omega`, with its scaling.
#[derive(Debug, Clone)]
pub struct MetricCandidate {
    pub theta: ComplexMatrix,
    pub scaling: ScalingVector,
}

/// Decomposes the adjoint of `a`, enforcing a real nondegenerate spectrum.
pub fn analyze(a: &ComplexMatrix, tol: &Tolerances) -> Result<SpectralData> {
    let adjoint = a.adjoint();
    let (vals, vecs) = adjoint.eig(tol.eig_tol)?;
    let radius = vals.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let max_im = vals.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
    if max_im > tol.eig_real_tol * radius {
        return Err(Error::NonRealSpectrum { max_im, tol: tol.eig_real_tol * radius });
    }
    let eigenvalues = Array1::from_iter(vals.iter().map(|z| z.re));
    let n = eigenvalues.len();
    if n > 1 {
        let spread = eigenvalues[n - 1] - eigenvalues[0];
        for i in 0..n - 1 {
            let gap = eigenvalues[i + 1] - eigenvalues[i];
            if gap <= tol.degen_tol * spread || spread == 0.0 {
                return Err(Error::DegenerateSpectrum {
                    first: eigenvalues[i],
                    second: eigenvalues[i + 1],
                    gap,
                });
            }
        }
    }
    let omega_dagger = canonicalize_phases(&vecs)?;
    // Columnwise eigenrelation restated as a whole-matrix residual.
    let lhs = adjoint.matmul(&omega_dagger)?;
    let rhs = omega_dagger.matmul(&ComplexMatrix::from_real_diagonal(&eigenvalues))?;
    let resid = lhs.sub(&rhs)?.fro_norm();
    let scale = adjoint.fro_norm() * omega_dagger.fro_norm();
    if resid > tol.eig_tol * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::ConvergenceFailure);
    }
    Ok(SpectralData { eigenvalues, omega_dagger, source: a.clone() })
}

/// Rotates every column so its largest-modulus component is real positive,
/// and renormalizes to unit norm.
fn canonicalize_phases(vecs: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = vecs.n();
    let mut out = Array2::<C64>::zeros((n, n));
    for j in 0..n {
        let col = vecs.as_array().column(j);
        let mut k = 0;
        let mut best = 0.0f64;
        for (i, z) in col.iter().enumerate() {
            let m = z.norm();
            if m > best {
                best = m;
                k = i;
            }
        }
        if best == 0.0 {
            return Err(Error::ConvergenceFailure);
        }
        let phase = col[k] / col[k].norm();
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            out[(i, j)] = col[i] / (phase * norm);
        }
    }
    ComplexMatrix::new(out)
}

/// The metric `theta(c) = omega^dag c^2 omega` for a strictly positive
/// scaling. With `c = 1` this is the plain Gram matrix of the factor.
pub fn metric(sd: &SpectralData, c: &ScalingVector, tol: &Tolerances) -> Result<MetricCandidate> {
    if c.len() != sd.n() {
        return Err(Error::DimensionMismatch { left: sd.n(), right: c.len() });
    }
    let scaled = sd.omega_dagger().scale_cols(c.values())?;
    let theta = scaled.matmul(&sd.omega())?.hermitize();
    let eigs = theta.hermitian_eigenvalues(tol.herm_tol)?;
    let min_eig = eigs[0];
    if min_eig <= 0.0 {
        return Err(Error::MetricNotPositive { min_eig });
    }
    Ok(MetricCandidate { theta, scaling: c.clone() })
}

/// Relative intertwining defect `|A^dag theta - theta A|_F / (|A|_F |theta|_F)`.
/// Zero exactly when `theta` makes `a` quasi-Hermitian.
pub fn quasi_hermiticity_residual(a: &ComplexMatrix, theta: &ComplexMatrix) -> Result<f64> {
    if a.n() != theta.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: theta.n() });
    }
    let lhs = a.adjoint().matmul(theta)?;
    let rhs = theta.matmul(a)?;
    let scale = a.fro_norm() * theta.fro_norm();
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(lhs.sub(&rhs)?.fro_norm() / scale)
}

/// Conjugates the adjoint of the source into its eigenbasis,
/// `(omega^dag)^{-1} A^dag omega^dag`; the result must be diagonal and is
/// returned as a self-check.
pub fn isospectral_image(sd: &SpectralData, tol: &Tolerances) -> Result<ComplexMatrix> {
    let adjoint = sd.source().adjoint();
    let rhs = adjoint.matmul(sd.omega_dagger())?;
    let image = sd.omega_dagger().solve_matrix(&rhs, tol.rank_tol)?;
    let n = image.n();
    let mut off = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                off += image.as_array()[(p, q)].norm_sqr();
            }
        }
    }
    let scale = adjoint.fro_norm().max(f64::MIN_POSITIVE);
    if off.sqrt() > 1e-8 * scale {
        return Err(Error::ConvergenceFailure);
    }
    Ok(image)
}
