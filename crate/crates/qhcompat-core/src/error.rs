//! Error type shared by every module of the crate.

/// Everything that can go wrong while analyzing or constructing observables.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entries must be finite (found NaN or infinity)")]
    NonFiniteEntry,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular or near-singular (condition estimate {cond:.3e})")]
    SingularMatrix { cond: f64 },

    #[error("eigenvalue computation failed to converge")]
    ConvergenceFailure,

    #[error("matrix is not Hermitian: relative asymmetry {resid:.3e} exceeds {tol:.3e}")]
    NotHermitian { resid: f64, tol: f64 },

    #[error("spectrum is not real: max |Im| = {max_im:.3e} exceeds {tol:.3e}")]
    NonRealSpectrum { max_im: f64, tol: f64 },

    #[error(
        "spectrum is degenerate: eigenvalues {first:.6} and {second:.6} differ by {gap:.3e}; \
         degenerate inputs are rejected, not regularized"
    )]
    DegenerateSpectrum { first: f64, second: f64, gap: f64 },

    #[error("constructed metric is not positive definite (min eigenvalue {min_eig:.3e})")]
    MetricNotPositive { min_eig: f64 },

    #[error("requested minimum gap {gap} cannot fit {n} eigenvalues in [{lo}, {hi}]")]
    DegenerateSpectrumRequested { gap: f64, n: usize, lo: f64, hi: f64 },

    #[error("failed to draw a factor with condition number <= {cap} within {tries} tries")]
    IllConditioned { cap: f64, tries: usize },

    #[error("brute-force certifier supports dimension <= {max}, got {n}")]
    OracleDimensionExceeded { n: usize, max: usize },

    #[error("need at least {min} observables, got {got}")]
    TooFewObservables { min: usize, got: usize },

    #[error("invalid scaling vector: entries must be strictly positive and finite")]
    InvalidScaling,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
