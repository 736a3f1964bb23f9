//! Independent brute-force certifier.
//!
//! Solves the joint intertwining equations `A_j^dag theta = theta A_j`
//! directly as a real linear system over Hermitian matrices, then searches
//! the solution space for a positive-definite element. Deliberately
//! different machinery from the mixer-based decision path, so the two can
//! cross-validate each other on small dimensions.

use ndarray::{Array1, Array2};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matcore::{self, C64, ComplexMatrix};
use crate::tol::Tolerances;

/// Largest dimension the certifier accepts.
pub const ORACLE_MAX_N: usize = 4;

/// Number of ascent restarts in the positive-definite search.
pub const MAX_STARTS: usize = 64;

const SEARCH_SEED: u64 = 0x51CA_7E0F;

/// Frobenius-orthonormal basis of the joint solution space
/// `{theta = theta^dag : A_j^dag theta = theta A_j for all j}`.
#[derive(Debug, Clone)]
pub struct ThetaSolutionSpace {
    basis: Vec<ComplexMatrix>,
    n: usize,
}

impl ThetaSolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Verdict of the brute-force path.
#[derive(Debug, Clone)]
pub enum OracleVerdict {
    Compatible(ComplexMatrix),
    /// `search_caveat` marks the case where the solution space had dimension
    /// at least two and the multi-start search came up empty: that is
    /// evidence, not proof.
    Incompatible { search_caveat: bool },
}

impl OracleVerdict {
    pub fn is_compatible(&self) -> bool {
        matches!(self, OracleVerdict::Compatible(_))
    }
}

/// Coordinates: `n` diagonal entries, then `sqrt(2) * (Re, Im)` of each
/// strict upper-triangle entry, so the Euclidean norm of the coordinate
/// vector equals the Frobenius norm of the matrix.
fn herm_dim(n: usize) -> usize {
    n * n
}

fn vec_to_herm(v: &Array1<f64>, n: usize) -> ComplexMatrix {
    let mut out = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        out[(i, i)] = C64::new(v[i], 0.0);
    }
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    let mut at = n;
    for p in 0..n {
        for q in (p + 1)..n {
            let re = v[at] * inv_sqrt2;
            let im = v[at + 1] * inv_sqrt2;
            out[(p, q)] = C64::new(re, im);
            out[(q, p)] = C64::new(re, -im);
            at += 2;
        }
    }
    ComplexMatrix::new(out).expect("square finite by construction")
}

#[cfg(test)]
fn herm_to_vec(theta: &ComplexMatrix) -> Array1<f64> {
    let n = theta.n();
    let mut v = Array1::<f64>::zeros(herm_dim(n));
    for i in 0..n {
        v[i] = theta.as_array()[(i, i)].re;
    }
    let sqrt2 = 2f64.sqrt();
    let mut at = n;
    for p in 0..n {
        for q in (p + 1)..n {
            let z = theta.as_array()[(p, q)];
            v[at] = z.re * sqrt2;
            v[at + 1] = z.im * sqrt2;
            at += 2;
        }
    }
    v
}

/// Joint solution space of the intertwining equations for all observables.
pub fn solution_space(observables: &[ComplexMatrix], tol: &Tolerances) -> Result<ThetaSolutionSpace> {
    let n = match observables.first() {
        Some(a) => a.n(),
        None => return Err(Error::TooFewObservables { min: 1, got: 0 }),
    };
    for a in observables {
        if a.n() != n {
            return Err(Error::DimensionMismatch { left: n, right: a.n() });
        }
    }
    let dim = herm_dim(n);
    // Column i of the constraint matrix: stacked Re/Im of
    // A_j^dag B_i - B_i A_j over all j and all matrix entries.
    let rows = 2 * n * n * observables.len();
    let mut c = Array2::<f64>::zeros((rows, dim));
    for i in 0..dim {
        let mut e = Array1::<f64>::zeros(dim);
        e[i] = 1.0;
        let b = vec_to_herm(&e, n);
        let mut at = 0;
        for a in observables {
            let r = a.adjoint().matmul(&b)?.sub(&b.matmul(a)?)?;
            for p in 0..n {
                for q in 0..n {
                    let z = r.as_array()[(p, q)];
                    c[(at, i)] = z.re;
                    c[(at + 1, i)] = z.im;
                    at += 2;
                }
            }
        }
    }
    let floor = observables
        .iter()
        .map(|a| a.fro_norm())
        .fold(0.0f64, f64::max);
    let null = matcore::nullspace_real_with_floor(&c, tol.null_tol, floor);
    let mut basis = Vec::with_capacity(null.ncols());
    for j in 0..null.ncols() {
        let coords = null.column(j).to_owned();
        let theta = vec_to_herm(&coords, n);
        // Spec of the space: every basis element intertwines within 1e-9
        // relative. The nullspace construction guarantees this; verify anyway.
        for a in observables {
            let resid = crate::dyson::quasi_hermiticity_residual(a, &theta)?;
            if resid > 1e-9 {
                return Err(Error::ConvergenceFailure);
            }
        }
        basis.push(theta);
    }
    Ok(ThetaSolutionSpace { basis, n })
}

/// Searches the span of the basis for a positive-definite element. Exact for
/// dimensions zero and one; multi-start maximin ascent on the unit sphere for
/// higher dimensions. Returns the element (scaled as found) and a caveat flag
/// that is set when a search (rather than a proof) produced a negative answer.
pub fn find_positive_definite(
    space: &ThetaSolutionSpace,
    tol: &Tolerances,
) -> (Option<ComplexMatrix>, bool) {
    match space.dim() {
        0 => (None, false),
        1 => {
            let b = &space.basis[0];
            for candidate in [b.clone(), b.scale(C64::new(-1.0, 0.0))] {
                if min_eig(&candidate, tol) > tol.pd_tol * candidate.fro_norm() {
                    return (Some(candidate), false);
                }
            }
            (None, false)
        }
        d => {
            let found = maximin_search(space, tol, d);
            let caveat = found.is_none();
            (found, caveat)
        }
    }
}

fn min_eig(theta: &ComplexMatrix, tol: &Tolerances) -> f64 {
    theta
        .hermitian_eigenvalues(tol.herm_tol.max(1e-9))
        .map(|e| e[0])
        .unwrap_or(f64::NEG_INFINITY)
}

/// Maximizes `lambda_min(sum_i t_i B_i)` over the unit sphere by projected
/// supergradient ascent from deterministic starts, stopping at the first
/// strictly positive-definite point.
fn maximin_search(space: &ThetaSolutionSpace, tol: &Tolerances, d: usize) -> Option<ComplexMatrix> {
    let n = space.n();
    // Start list: the projection of the identity onto the span (the natural
    // first guess for a metric), the basis directions, then seeded noise.
    let mut starts: Vec<Array1<f64>> = Vec::with_capacity(MAX_STARTS);
    let id_proj = Array1::from_iter(space.basis.iter().map(|b| {
        let mut acc = 0.0;
        for i in 0..n {
            acc += b.as_array()[(i, i)].re;
        }
        acc
    }));
    if id_proj.iter().map(|v| v * v).sum::<f64>() > 1e-20 {
        starts.push(id_proj);
    }
    for i in 0..d {
        let mut e = Array1::<f64>::zeros(d);
        e[i] = 1.0;
        starts.push(e.clone());
        e[i] = -1.0;
        starts.push(e);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(SEARCH_SEED);
    while starts.len() < MAX_STARTS {
        let t: Array1<f64> =
            Array1::from_iter((0..d).map(|_| StandardNormal.sample(&mut rng)));
        starts.push(t);
    }

    let mut best: Option<(f64, ComplexMatrix)> = None;
    for t0 in starts {
        let (value, theta) = ascend(space, &t0, tol);
        let good = value > tol.pd_tol * theta.fro_norm().max(f64::MIN_POSITIVE);
        match &best {
            _ if good => return Some(theta),
            None => best = Some((value, theta)),
            Some((bv, _)) if value > *bv => best = Some((value, theta)),
            _ => {}
        }
    }
    None
}

fn combine(space: &ThetaSolutionSpace, t: &Array1<f64>) -> ComplexMatrix {
    let n = space.n();
    let mut acc = Array2::<C64>::zeros((n, n));
    for (w, b) in t.iter().zip(space.basis.iter()) {
        acc = acc + b.as_array().mapv(|z| z * *w);
    }
    ComplexMatrix::new(acc).expect("linear combination of valid matrices")
}

fn ascend(
    space: &ThetaSolutionSpace,
    t0: &Array1<f64>,
    tol: &Tolerances,
) -> (f64, ComplexMatrix) {
    let mut t = t0.clone();
    let norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        t[0] = 1.0;
    } else {
        t.mapv_inplace(|v| v / norm);
    }
    let mut theta = combine(space, &t);
    let mut value = f64::NEG_INFINITY;
    for _ in 0..150 {
        let (eigs, vecs) = match theta.hermitian_eig(tol.herm_tol.max(1e-9)) {
            Ok(r) => r,
            Err(_) => break,
        };
        value = eigs[0];
        if value > tol.pd_tol * theta.fro_norm().max(f64::MIN_POSITIVE) {
            return (value, theta);
        }
        let v = vecs.as_array().column(0);
        // Supergradient of lambda_min at a simple eigenvalue.
        let grad = Array1::from_iter(space.basis.iter().map(|b| {
            let bv = b.as_array().dot(&v);
            v.iter()
                .zip(bv.iter())
                .map(|(a, c)| (a.conj() * c).re)
                .sum::<f64>()
        }));
        let radial: f64 = grad.iter().zip(t.iter()).map(|(g, w)| g * w).sum();
        let tangent = &grad - &t.mapv(|w| w * radial);
        let tnorm = tangent.iter().map(|v| v * v).sum::<f64>().sqrt();
        if tnorm < 1e-13 {
            break;
        }
        let mut improved = false;
        let mut step = 1.0;
        for _ in 0..40 {
            let mut cand = &t + &tangent.mapv(|v| v * (step / tnorm));
            let cnorm = cand.iter().map(|v| v * v).sum::<f64>().sqrt();
            cand.mapv_inplace(|v| v / cnorm);
            let cand_theta = combine(space, &cand);
            let cand_val = min_eig(&cand_theta, tol);
            if cand_val > value + 1e-15 {
                t = cand;
                theta = cand_theta;
                value = cand_val;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (value, theta)
}

/// Brute-force compatibility decision for small dimensions.
pub fn decide_bruteforce(observables: &[ComplexMatrix], tol: &Tolerances) -> Result<OracleVerdict> {
    let n = match observables.first() {
        Some(a) => a.n(),
        None => return Err(Error::TooFewObservables { min: 1, got: 0 }),
    };
    if n > ORACLE_MAX_N {
        return Err(Error::OracleDimensionExceeded { n, max: ORACLE_MAX_N });
    }
    let space = solution_space(observables, tol)?;
    let (found, caveat) = find_positive_definite(&space, tol);
    match found {
        Some(theta) => Ok(OracleVerdict::Compatible(theta)),
        None => Ok(OracleVerdict::Incompatible { search_caveat: caveat }),
    }
}

/// Draws a random diagonalizable matrix with a real nondegenerate spectrum:
/// `S^{-1} diag(a) S` with a condition-capped random `S`. Used by the test
/// suites to sample "generic" observables independent of the constructive
/// generator.
pub fn random_real_spectrum_observable(n: usize, seed: u64, tol: &Tolerances) -> ComplexMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    loop {
        let mut s = Array2::<C64>::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                s[(i, j)] = C64::new(re, im);
            }
        }
        let smat = match ComplexMatrix::new(s) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if smat.condition().map(|c| c > 50.0).unwrap_or(true) {
            continue;
        }
        let mut vals: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if n > 1 && vals.windows(2).any(|w| w[1] - w[0] < 0.1) {
            continue;
        }
        let diag = ComplexMatrix::from_real_diagonal(&Array1::from(vals));
        let rhs = diag.matmul(&smat).expect("same dims");
        match smat.solve_matrix(&rhs, tol.rank_tol) {
            Ok(a) => return a,
            Err(_) => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{compat, example};
    use ndarray::array;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn herm_roundtrip_preserves_frobenius_norm() {
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.5, -2.0)],
            vec![C64::new(0.5, 2.0), C64::new(-3.0, 0.0)],
        ])
        .unwrap();
        let v = herm_to_vec(&m);
        let back = vec_to_herm(&v, 2);
        assert!(back.sub(&m).unwrap().fro_norm() < 1e-14);
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((vnorm - m.fro_norm()).abs() < 1e-13);
    }

    #[test]
    fn commutant_of_diagonal_hermitian() {
        // Distinct-eigenvalue Hermitian observable: the space is the set of
        // real diagonal matrices in its eigenbasis, dimension n.
        let a = ComplexMatrix::from_real_diagonal(&array![1.0, 2.0]);
        let space = solution_space(&[a], &tols()).unwrap();
        assert_eq!(space.dim(), 2);
        for b in space.basis() {
            assert!(b.as_array()[(0, 1)].norm() < 1e-10);
            assert!(b.as_array()[(1, 0)].norm() < 1e-10);
        }
    }

    #[test]
    fn single_example_observable_has_full_family() {
        let a1 = example::a1(0.5).unwrap();
        let space = solution_space(&[a1], &tols()).unwrap();
        assert_eq!(space.dim(), 3);
    }

    #[test]
    fn bundled_pair_space_is_empty() {
        let (a1, a2) = example::pair(0.5, 0.5).unwrap();
        let space = solution_space(&[a1, a2], &tols()).unwrap();
        assert_eq!(space.dim(), 0);
        let (found, caveat) = find_positive_definite(&space, &tols());
        assert!(found.is_none());
        assert!(!caveat);
    }

    #[test]
    fn single_observable_space_contains_a_metric() {
        let a1 = example::a1(0.5).unwrap();
        let space = solution_space(&[a1.clone()], &tols()).unwrap();
        let (found, _) = find_positive_definite(&space, &tols());
        let theta = found.expect("one observable always admits a metric");
        let resid = crate::dyson::quasi_hermiticity_residual(&a1, &theta).unwrap();
        assert!(resid <= 1e-9);
        let eigs = theta.hermitian_eigenvalues(1e-8).unwrap();
        assert!(eigs[0] > 0.0);
    }

    #[test]
    fn indefinite_line_yields_none() {
        let b = ComplexMatrix::from_real_diagonal(&array![1.0, -1.0]);
        let space = ThetaSolutionSpace { basis: vec![b], n: 2 };
        let (found, caveat) = find_positive_definite(&space, &tols());
        assert!(found.is_none());
        assert!(!caveat, "dimension one is decided exactly");
    }

    #[test]
    fn bruteforce_matches_decide_on_bundled_cases() {
        let (a1, a2) = example::pair(0.5, 0.5).unwrap();
        let verdict = decide_bruteforce(&[a1.clone(), a2], &tols()).unwrap();
        assert!(!verdict.is_compatible());

        let same = decide_bruteforce(&[a1.clone(), a1.clone()], &tols()).unwrap();
        match same {
            OracleVerdict::Compatible(theta) => {
                let r = crate::dyson::quasi_hermiticity_residual(&a1, &theta).unwrap();
                assert!(r <= 1e-8);
            }
            _ => panic!("identical observables must be compatible"),
        }
    }

    #[test]
    fn bruteforce_rejects_large_dimension() {
        let a = ComplexMatrix::identity(5);
        assert!(matches!(
            decide_bruteforce(&[a.clone(), a], &tols()),
            Err(Error::OracleDimensionExceeded { n: 5, max: 4 })
        ));
    }

    #[test]
    fn random_observable_has_real_spectrum() {
        let a = random_real_spectrum_observable(3, 7, &tols());
        let sd = crate::dyson::analyze(&a, &tols()).unwrap();
        assert_eq!(sd.n(), 3);
    }

    #[test]
    fn oracle_agrees_with_mixer_path_on_a_sample() {
        let t = tols();
        for seed in 0..12u64 {
            let a = random_real_spectrum_observable(2, 1000 + seed, &t);
            let b = random_real_spectrum_observable(2, 2000 + seed, &t);
            let fast = compat::decide(&a, &b, &t).unwrap();
            let slow = decide_bruteforce(&[a, b], &t).unwrap();
            assert_eq!(
                fast.status == compat::Status::Compatible,
                slow.is_compatible(),
                "disagreement at seed {seed}: {:?} vs {:?}",
                fast.status,
                slow.is_compatible()
            );
        }
    }
}
