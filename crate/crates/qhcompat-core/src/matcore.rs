//! Dense complex matrix arithmetic and the decompositions everything else
//! builds on.
//!
//! Matrices are square, finite and immutable once constructed. Decompositions
//! are delegated to LAPACK through `ndarray-linalg`; this module adds the
//! validation, deterministic ordering and error mapping the rest of the crate
//! relies on.

use ndarray::{Array1, Array2};
use ndarray_linalg::{c64, Eig, Eigh, Inverse, Norm, SVD, UPLO};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = c64;

/// Square dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(Array2<C64>);

impl ComplexMatrix {
    /// Validates squareness and finiteness.
    pub fn new(data: Array2<C64>) -> Result<Self> {
        let (rows, cols) = data.dim();
        if rows != cols || rows == 0 {
            return Err(Error::NotSquare { rows, cols });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self(data))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
            return Err(Error::NotSquare { rows: n, cols });
        }
        let flat: Vec<C64> = rows.iter().flatten().copied().collect();
        let data = Array2::from_shape_vec((n, n), flat).expect("shape checked above");
        Self::new(data)
    }

    /// Builds from real entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let lifted: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&lifted)
    }

    pub fn identity(n: usize) -> Self {
        Self(Array2::eye(n))
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diagonal(d: &Array1<f64>) -> Self {
        Self(Array2::from_diag(&d.mapv(|x| C64::new(x, 0.0))))
    }

    pub fn from_complex_diagonal(d: &Array1<C64>) -> Self {
        Self(Array2::from_diag(d))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.0
    }

    pub fn into_array(self) -> Array2<C64> {
        self.0
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = self.0.t().to_owned();
        out.mapv_inplace(|z| z.conj());
        Self(out)
    }

    /// Standard matrix product.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        Ok(Self(self.0.dot(&rhs.0)))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        Ok(Self(&self.0 + &rhs.0))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs)?;
        Ok(Self(&self.0 - &rhs.0))
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self(self.0.mapv(|z| z * factor))
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.0.norm_l2()
    }

    /// `diag(d) * self` with a real diagonal: scales row `i` by `d[i]`.
    pub fn scale_rows(&self, d: &Array1<f64>) -> Result<Self> {
        if d.len() != self.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: d.len() });
        }
        let mut out = self.0.clone();
        for (i, mut row) in out.rows_mut().into_iter().enumerate() {
            row.mapv_inplace(|z| z * d[i]);
        }
        Ok(Self(out))
    }

    /// `self * diag(d)` with a real diagonal: scales column `j` by `d[j]`.
    pub fn scale_cols(&self, d: &Array1<f64>) -> Result<Self> {
        if d.len() != self.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: d.len() });
        }
        let mut out = self.0.clone();
        for (j, mut col) in out.columns_mut().into_iter().enumerate() {
            col.mapv_inplace(|z| z * d[j]);
        }
        Ok(Self(out))
    }

    /// Ratio of the largest to the smallest singular value.
    pub fn condition(&self) -> Result<f64> {
        let (_, s, _) = self.0.svd(false, false).map_err(|_| Error::ConvergenceFailure)?;
        let smax = s.iter().cloned().fold(0.0f64, f64::max);
        let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
        if smin == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(smax / smin)
    }

    /// Inverse via pivoted LU, guarded by a singular-value rank check.
    pub fn inverse(&self, rank_tol: f64) -> Result<Self> {
        let (_, s, _) = self.0.svd(false, false).map_err(|_| Error::ConvergenceFailure)?;
        let smax = s.iter().cloned().fold(0.0f64, f64::max);
        let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
        if smin <= rank_tol * smax {
            let cond = if smin == 0.0 { f64::INFINITY } else { smax / smin };
            return Err(Error::SingularMatrix { cond });
        }
        let inv = self
            .0
            .inv()
            .map_err(|_| Error::SingularMatrix { cond: smax / smin })?;
        Self::new(inv)
    }

    /// Solves `self * X = rhs` by pivoted LU, column by column.
    pub fn solve_matrix(&self, rhs: &Self, rank_tol: f64) -> Result<Self> {
        self.check_same_dim(rhs)?;
        // The explicit inverse is accurate enough at these sizes and keeps the
        // rank guard in one place.
        self.inverse(rank_tol)?.matmul(rhs)
    }

    /// Eigenvalues and unit-norm right eigenvectors, sorted by
    /// (real part, imaginary part) ascending.
    pub fn eig(&self, eig_tol: f64) -> Result<(Array1<C64>, ComplexMatrix)> {
        let (vals, vecs) = self.0.eig().map_err(|_| Error::ConvergenceFailure)?;
        if vals.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::ConvergenceFailure);
        }
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            (vals[i].re, vals[i].im)
                .partial_cmp(&(vals[j].re, vals[j].im))
                .expect("finite eigenvalues")
        });
        let sorted_vals = Array1::from_iter(order.iter().map(|&i| vals[i]));
        let mut sorted_vecs = Array2::<C64>::zeros((n, n));
        for (dst, &src) in order.iter().enumerate() {
            let col = vecs.column(src);
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::ConvergenceFailure);
            }
            for r in 0..n {
                sorted_vecs[(r, dst)] = col[r] / norm;
            }
        }
        let vmat = ComplexMatrix::new(sorted_vecs)?;
        // Residual gate |A v - lambda v| <= eig_tol * |A|_F * |v|.
        let a_norm = self.fro_norm();
        for k in 0..n {
            let v = vmat.0.column(k);
            let av = self.0.dot(&v);
            let resid: f64 = av
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (*a - sorted_vals[k] * *b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if resid > eig_tol * a_norm.max(f64::MIN_POSITIVE) {
                return Err(Error::ConvergenceFailure);
            }
        }
        Ok((sorted_vals, vmat))
    }

    /// `|U^dag U - I|_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.adjoint().0.dot(&self.0);
        let eye = Array2::<C64>::eye(self.n());
        (&gram - &eye).norm_l2()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// `|H - H^dag|_F / |H|_F` (zero for the zero matrix).
    pub fn hermiticity_residual(&self) -> f64 {
        let norm = self.fro_norm();
        if norm == 0.0 {
            return 0.0;
        }
        self.sub(&self.adjoint()).expect("same dims").fro_norm() / norm
    }

    /// Real spectrum of a Hermitian matrix, ascending. Rejects inputs whose
    /// relative asymmetry exceeds `herm_tol`.
    pub fn hermitian_eigenvalues(&self, herm_tol: f64) -> Result<Array1<f64>> {
        let resid = self.hermiticity_residual();
        if resid > herm_tol {
            return Err(Error::NotHermitian { resid, tol: herm_tol });
        }
        let (vals, _) = self
            .0
            .eigh(UPLO::Lower)
            .map_err(|_| Error::ConvergenceFailure)?;
        Ok(vals)
    }

    /// Full Hermitian eigendecomposition: real ascending eigenvalues and a
    /// unitary eigenvector matrix `V` with `H V = V diag(w)`.
    ///
    /// The backing LAPACK call sees the buffer in the opposite storage
    /// order, which conjugates a Hermitian matrix and with it the returned
    /// eigenvectors; the reconstruction residual detects that and undoes it.
    pub fn hermitian_eig(&self, herm_tol: f64) -> Result<(Array1<f64>, ComplexMatrix)> {
        let resid = self.hermiticity_residual();
        if resid > herm_tol {
            return Err(Error::NotHermitian { resid, tol: herm_tol });
        }
        let (vals, vecs) = self
            .0
            .eigh(UPLO::Lower)
            .map_err(|_| Error::ConvergenceFailure)?;
        let diag = Array2::from_diag(&vals.mapv(|x| C64::new(x, 0.0)));
        let direct = (&self.0.dot(&vecs) - &vecs.dot(&diag)).norm_l2();
        let conj = vecs.mapv(|z| z.conj());
        let conjugated = (&self.0.dot(&conj) - &conj.dot(&diag)).norm_l2();
        let chosen = if direct <= conjugated { vecs } else { conj };
        let scale = self.fro_norm().max(f64::MIN_POSITIVE);
        if direct.min(conjugated) > 1e-9 * scale {
            return Err(Error::ConvergenceFailure);
        }
        Ok((vals, ComplexMatrix::new(chosen)?))
    }

    /// Symmetrized copy `(self + self^dag) / 2`.
    pub fn hermitize(&self) -> Self {
        let adj = self.adjoint();
        Self((&self.0 + &adj.0).mapv(|z| z * 0.5))
    }

    fn check_same_dim(&self, rhs: &Self) -> Result<()> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: rhs.n() });
        }
        Ok(())
    }
}

/// `exp(K)` for an anti-Hermitian generator `K` (so the result is unitary),
/// computed through the Hermitian eigendecomposition of `iK`.
pub fn expm_antihermitian(k: &ComplexMatrix, herm_tol: f64) -> Result<ComplexMatrix> {
    let h = k.scale(C64::new(0.0, 1.0)); // iK is Hermitian when K^dag = -K
    let (vals, vecs) = h.hermitian_eig(herm_tol)?;
    // exp(K) = exp(-iH) = V exp(-i lambda) V^dag
    let phases = Array1::from_iter(vals.iter().map(|&l| C64::new(0.0, -l).exp()));
    let n = k.n();
    let v = vecs.as_array();
    let mut out = Array2::<C64>::zeros((n, n));
    for p in 0..n {
        for q in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for m in 0..n {
                acc += v[(p, m)] * phases[m] * v[(q, m)].conj();
            }
            out[(p, q)] = acc;
        }
    }
    ComplexMatrix::new(out)
}

/// Orthonormal basis of the real nullspace `{x : C x = 0}`, as columns.
/// Singular values below `null_tol * sigma_max` count as zero. The basis may
/// be empty (zero columns).
pub fn nullspace_real(c: &Array2<f64>, null_tol: f64) -> Array2<f64> {
    nullspace_real_with_floor(c, null_tol, 0.0)
}

/// Like [`nullspace_real`], but the rank cutoff is `null_tol * max(sigma_max,
/// floor)`. A floor set to the natural coefficient scale of the system keeps
/// a matrix that is pure roundoff noise from masquerading as full rank.
pub fn nullspace_real_with_floor(c: &Array2<f64>, null_tol: f64, floor: f64) -> Array2<f64> {
    let (rows, cols) = c.dim();
    if rows == 0 || cols == 0 {
        return Array2::eye(cols);
    }
    let (_, s, vt) = c.svd(false, true).expect("real SVD of a finite matrix");
    let vt = vt.expect("requested V^T");
    let smax = s.iter().cloned().fold(0.0f64, f64::max).max(floor);
    if smax == 0.0 {
        return Array2::eye(cols);
    }
    let rank = s.iter().filter(|&&sv| sv > null_tol * smax).count();
    let d = cols - rank;
    let mut basis = Array2::<f64>::zeros((cols, d));
    for (j, row) in (rank..cols).enumerate() {
        for i in 0..cols {
            basis[(i, j)] = vt[(row, i)];
        }
    }
    basis
}

/// Complex analogue of [`nullspace_real`]: orthonormal basis of
/// `{x in C^n : C x = 0}` as columns.
pub fn nullspace_complex(c: &Array2<C64>, null_tol: f64) -> Array2<C64> {
    let (rows, cols) = c.dim();
    if rows == 0 || cols == 0 {
        return Array2::eye(cols);
    }
    let (_, s, vh) = c.svd(false, true).expect("complex SVD of a finite matrix");
    let vh = vh.expect("requested V^H");
    let smax = s.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return Array2::eye(cols);
    }
    let rank = s.iter().filter(|&&sv| sv > null_tol * smax).count();
    let d = cols - rank;
    let mut basis = Array2::<C64>::zeros((cols, d));
    for (j, row) in (rank..cols).enumerate() {
        for i in 0..cols {
            // Nullspace vectors are the conjugated rows of V^H.
            basis[(i, j)] = vh[(row, i)].conj();
        }
    }
    basis
}
