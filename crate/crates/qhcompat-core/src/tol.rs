//! Centralized tolerance bundle.
//!
//! Every cutoff used by the pipeline lives here, so a caller can tighten or
//! relax the whole analysis in one place. All tolerances are relative unless
//! noted otherwise.

/// Numerical cutoffs for the whole pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigendecomposition residual: `|A v - lambda v| <= eig_tol * |A|_F * |v|`.
    pub eig_tol: f64,
    /// Singular values below `null_tol * sigma_max` count as zero in nullspace
    /// computations.
    pub null_tol: f64,
    /// Hermiticity check: `|H - H^dag|_F <= herm_tol * |H|_F`.
    pub herm_tol: f64,
    /// Inversion refuses matrices with `sigma_min <= rank_tol * sigma_max`.
    pub rank_tol: f64,
    /// A spectrum counts as real when `max |Im| <= eig_real_tol * spectral radius`.
    pub eig_real_tol: f64,
    /// Minimum admissible eigenvalue gap, relative to the spectral spread.
    pub degen_tol: f64,
    /// Residual of the mixer construction, relative to the factor norm.
    pub mixer_tol: f64,
    /// Feasibility margin (under the sum normalization) above which a scaling
    /// vector counts as strictly positive.
    pub pos_margin: f64,
    /// Half-width of the band around zero margin reported as borderline.
    pub margin_band: f64,
    /// Acceptance threshold for witness residuals (metric mismatch, unitarity,
    /// quasi-Hermiticity of the witness metric).
    pub witness_tol: f64,
    /// Positive-definiteness threshold used by the brute-force certifier,
    /// relative to the Frobenius norm of the candidate.
    pub pd_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig_tol: 1e-9,
            null_tol: 1e-8,
            herm_tol: 1e-10,
            rank_tol: 1e-12,
            eig_real_tol: 1e-9,
            degen_tol: 1e-8,
            mixer_tol: 1e-10,
            pos_margin: 1e-8,
            margin_band: 1e-6,
            witness_tol: 1e-8,
            pd_tol: 1e-8,
        }
    }
}

impl Tolerances {
    /// Bundle with the decision tolerance (`witness_tol`) replaced.
    pub fn with_witness_tol(mut self, tol: f64) -> Self {
        self.witness_tol = tol;
        self
    }
}
