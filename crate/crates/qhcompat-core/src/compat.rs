//! Shared-metric compatibility decisions.
//!
//! Two observables with real nondegenerate spectra admit one common
//! positive-definite metric exactly when positive diagonal scalings exist
//! that make their two metric families intersect. Eliminating the second
//! scaling turns that into a homogeneous linear system on the first one:
//! the off-diagonal entries of `M^dag diag(x) M` must vanish, where
//! `M = omega_1 omega_2^{-1}` mixes the two eigenbases. This module
//! assembles that system over the reals, finds its nullspace, and settles
//! strict positivity with a max-margin feasibility program, producing either
//! a witness metric or a machine-checkable certificate of impossibility.

use ndarray::{Array1, Array2};

use crate::dyson::{self, ScalingVector, SpectralData};
use crate::error::{Error, Result};
use crate::matcore::{self, C64, ComplexMatrix};
use crate::simplex::{self, Lp, LpOutcome};
use crate::tol::Tolerances;

/// The basis-change factor `M = omega_1 omega_2^{-1}` between two
/// decompositions, with a condition estimate.
#[derive(Debug, Clone)]
pub struct MixerMatrix {
    m: ComplexMatrix,
    cond: f64,
}

impl MixerMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn cond(&self) -> f64 {
        self.cond
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }
}

/// Which real part of a complex constraint a row encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintPart {
    Re,
    Im,
}

/// Provenance of one real constraint row: the strict upper-triangle entry
/// `(row, col)` of `M^dag diag(x) M` it came from, split into Re/Im.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintLabel {
    pub row: usize,
    pub col: usize,
    pub part: ConstraintPart,
}

/// Real-split homogeneous constraint system on the scaling vector `x`.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    c_real: Array2<f64>,
    labels: Vec<ConstraintLabel>,
    n: usize,
    /// Natural coefficient scale (`|M|_F^2 / n`), used to floor the rank
    /// cutoff: a system whose rows are pure roundoff (identical observables)
    /// must count as vacuous, not full rank.
    scale: f64,
}

impl ConstraintSystem {
    /// Rows: `n (n - 1)` per mixer (Re and Im of each strict upper-triangle
    /// entry). Columns: `n`.
    pub fn c_real(&self) -> &Array2<f64> {
        &self.c_real
    }

    pub fn labels(&self) -> &[ConstraintLabel] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.c_real.nrows()
    }

    /// Stacks several systems of equal width into one.
    pub fn stacked(systems: &[ConstraintSystem]) -> Result<ConstraintSystem> {
        let n = systems.first().map(|s| s.n).unwrap_or(0);
        if systems.iter().any(|s| s.n != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: systems.iter().map(|s| s.n).find(|&m| m != n).unwrap_or(n),
            });
        }
        let rows: usize = systems.iter().map(|s| s.rows()).sum();
        let mut c_real = Array2::<f64>::zeros((rows, n));
        let mut labels = Vec::with_capacity(rows);
        let mut at = 0;
        let mut scale = 0.0f64;
        for s in systems {
            scale = scale.max(s.scale);
            for r in 0..s.rows() {
                for j in 0..n {
                    c_real[(at, j)] = s.c_real[(r, j)];
                }
                labels.push(s.labels[r]);
                at += 1;
            }
        }
        Ok(ConstraintSystem { c_real, labels, n, scale })
    }
}

/// Feasibility outcome details carried by every verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityDiagnostics {
    /// Dimension of the real nullspace of the constraint system.
    pub nullspace_dim: usize,
    /// Best achievable minimum component under the sum normalization;
    /// `None` when no feasibility program was solvable (empty nullspace, or a
    /// nullspace orthogonal to the normalization).
    pub margin: Option<f64>,
}

/// Outcome of a compatibility decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Compatible,
    Incompatible,
    Borderline,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Compatible => "compatible",
            Status::Incompatible => "incompatible",
            Status::Borderline => "borderline",
        }
    }
}

/// Constructive evidence for a compatible pair: the scalings, the shared
/// metric, and the residuals that certify it.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Scaling of the first observable's factor (`x = c_1^2`).
    pub x: ScalingVector,
    /// Derived scalings for the remaining observables (`y_j = c_j^2`).
    pub ys: Vec<ScalingVector>,
    /// The shared metric, built from the first factor.
    pub theta: ComplexMatrix,
    /// Worst `|U^dag U - I|_F` over the rescaled mixers.
    pub unitarity_residual: f64,
    /// Worst relative mismatch between the first metric and the others.
    pub metric_mismatch: f64,
    /// Relative intertwining defect of the witness against every observable.
    pub quasi_hermiticity: Vec<f64>,
}

/// Evidence for an incompatible pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub nullspace_dim: usize,
    pub lp_margin: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CompatibilityVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub certificate: Certificate,
    /// Spectra of the inputs, in input order.
    pub spectra: Vec<Array1<f64>>,
}

/// `M = omega_1 omega_2^{-1}`, computed through the adjoint factors and
/// verified against `M omega_2 = omega_1`.
pub fn mixer(sd1: &SpectralData, sd2: &SpectralData, tol: &Tolerances) -> Result<MixerMatrix> {
    if sd1.n() != sd2.n() {
        return Err(Error::DimensionMismatch { left: sd1.n(), right: sd2.n() });
    }
    // M^dag = (omega_2^dag)^{-1} omega_1^dag
    let m_dagger = sd2
        .omega_dagger()
        .solve_matrix(sd1.omega_dagger(), tol.rank_tol)?;
    let m = m_dagger.adjoint();
    let cond = m.condition()?;
    let resid = m
        .matmul(&sd2.omega())?
        .sub(&sd1.omega())?
        .fro_norm();
    let scale = sd1.omega().fro_norm().max(f64::MIN_POSITIVE);
    if resid > tol.mixer_tol * scale {
        return Err(Error::SingularMatrix { cond: sd2.omega_dagger().condition()? });
    }
    Ok(MixerMatrix { m, cond })
}

/// Real-split rows of the strict upper triangle of `M^dag diag(x) M`, as
/// linear functionals of `x`. The coefficient of `x_k` in entry `(p, q)` is
/// `conj(M[k, p]) * M[k, q]`.
pub fn assemble_constraints(mixer: &MixerMatrix) -> ConstraintSystem {
    let n = mixer.n();
    let m = mixer.matrix().as_array();
    let mut c_real = Array2::<f64>::zeros((n * (n - 1), n));
    let mut labels = Vec::with_capacity(n * (n - 1));
    let mut at = 0;
    for p in 0..n {
        for q in (p + 1)..n {
            for k in 0..n {
                let coef = m[(k, p)].conj() * m[(k, q)];
                c_real[(at, k)] = coef.re;
                c_real[(at + 1, k)] = coef.im;
            }
            labels.push(ConstraintLabel { row: p, col: q, part: ConstraintPart::Re });
            labels.push(ConstraintLabel { row: p, col: q, part: ConstraintPart::Im });
            at += 2;
        }
    }
    let scale = mixer.matrix().fro_norm().powi(2) / n as f64;
    ConstraintSystem { c_real, labels, n, scale }
}

/// Same constraints kept complex: row `(p, q)` holds the coefficients of
/// `x_k` in the `(p, q)` entry, for every `p < q`. Used for diagnostics.
pub fn complex_constraint_matrix(mixer: &MixerMatrix) -> Array2<C64> {
    let n = mixer.n();
    let m = mixer.matrix().as_array();
    let mut out = Array2::<C64>::zeros((n * (n - 1) / 2, n));
    let mut at = 0;
    for p in 0..n {
        for q in (p + 1)..n {
            for k in 0..n {
                out[(at, k)] = m[(k, p)].conj() * m[(k, q)];
            }
            at += 1;
        }
    }
    out
}

/// Searches the real nullspace of the constraint system for a strictly
/// positive vector by maximizing the minimum component under the
/// normalization `sum x_i = n`. Returns the scaling when the margin clears
/// `pos_margin`, plus diagnostics either way.
pub fn solve_positive(
    cs: &ConstraintSystem,
    tol: &Tolerances,
) -> (Option<ScalingVector>, FeasibilityDiagnostics) {
    let n = cs.n();
    let basis = matcore::nullspace_real_with_floor(cs.c_real(), tol.null_tol, cs.scale);
    let d = basis.ncols();
    if d == 0 {
        return (None, FeasibilityDiagnostics { nullspace_dim: 0, margin: None });
    }
    // Column sums of the basis give the normalization functional on t.
    let col_sums: Array1<f64> = basis.sum_axis(ndarray::Axis(0));
    let sums_norm = col_sums.iter().map(|v| v * v).sum::<f64>().sqrt();
    if sums_norm < 1e-12 {
        // Every nullspace vector sums to zero, so none is strictly positive.
        return (None, FeasibilityDiagnostics { nullspace_dim: d, margin: None });
    }

    // Variables (t_1 .. t_d, m): maximize m subject to (B t)_i >= m and
    // sum_i (B t)_i = n.
    let mut objective = Array1::<f64>::zeros(d + 1);
    objective[d] = 1.0;
    let mut eq_row = Array1::<f64>::zeros(d + 1);
    for j in 0..d {
        eq_row[j] = col_sums[j];
    }
    let mut le = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Array1::<f64>::zeros(d + 1);
        for j in 0..d {
            row[j] = -basis[(i, j)];
        }
        row[d] = 1.0;
        le.push((row, 0.0));
    }
    let lp = Lp { objective, eq: vec![(eq_row, n as f64)], le };
    match simplex::solve(&lp) {
        LpOutcome::Optimal { value, point } => {
            let margin = value;
            let diag = FeasibilityDiagnostics { nullspace_dim: d, margin: Some(margin) };
            if margin > tol.pos_margin {
                let x = basis.dot(&point.slice(ndarray::s![..d]).to_owned());
                match ScalingVector::new(x) {
                    Ok(sv) => (Some(sv), diag),
                    Err(_) => (None, diag),
                }
            } else {
                (None, diag)
            }
        }
        // Neither outcome can occur for this program (the normalization slice
        // is nonempty and compact in the max-min sense); treat defensively.
        LpOutcome::Infeasible | LpOutcome::Unbounded => {
            (None, FeasibilityDiagnostics { nullspace_dim: d, margin: None })
        }
    }
}

/// The induced second scaling `y_n = sum_k x_k |M[k, n]|^2`, i.e. the
/// diagonal of `M^dag diag(x) M`. Strictly positive whenever `x` is, because
/// an invertible mixer has no zero column.
pub fn second_scaling(mixer: &MixerMatrix, x: &ScalingVector) -> Result<ScalingVector> {
    let n = mixer.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: x.len() });
    }
    let m = mixer.matrix().as_array();
    let xv = x.values();
    let mut y = Array1::<f64>::zeros(n);
    for col in 0..n {
        let mut acc = 0.0;
        for k in 0..n {
            acc += xv[k] * m[(k, col)].norm_sqr();
        }
        y[col] = acc;
    }
    ScalingVector::new(y)
}

/// Decides whether two observables admit a shared metric.
pub fn decide(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<CompatibilityVerdict> {
    decide_multi(&[a1.clone(), a2.clone()], tol)
}

/// K-observable generalization: one scaling vector for the first factor must
/// simultaneously clear the stacked constraint systems of every mixer
/// `M_j = omega_1 omega_j^{-1}`.
pub fn decide_multi(observables: &[ComplexMatrix], tol: &Tolerances) -> Result<CompatibilityVerdict> {
    if observables.len() < 2 {
        return Err(Error::TooFewObservables { min: 2, got: observables.len() });
    }
    let n = observables[0].n();
    for a in observables {
        if a.n() != n {
            return Err(Error::DimensionMismatch { left: n, right: a.n() });
        }
    }
    let spectral: Vec<SpectralData> = observables
        .iter()
        .map(|a| dyson::analyze(a, tol))
        .collect::<Result<_>>()?;
    let spectra: Vec<Array1<f64>> = spectral.iter().map(|sd| sd.eigenvalues().clone()).collect();

    let mixers: Vec<MixerMatrix> = spectral[1..]
        .iter()
        .map(|sd| mixer(&spectral[0], sd, tol))
        .collect::<Result<_>>()?;
    let systems: Vec<ConstraintSystem> = mixers.iter().map(assemble_constraints).collect();
    let stacked = ConstraintSystem::stacked(&systems)?;
    let (x_opt, diag) = solve_positive(&stacked, tol);

    let certificate = Certificate {
        nullspace_dim: diag.nullspace_dim,
        lp_margin: diag.margin,
    };

    let witness = match &x_opt {
        Some(x) => Some(build_witness(&spectral, &mixers, x, tol)?),
        None => None,
    };

    let status = classify(&diag, witness.as_ref(), tol);
    Ok(CompatibilityVerdict { status, witness, certificate, spectra })
}

fn classify(diag: &FeasibilityDiagnostics, witness: Option<&Witness>, tol: &Tolerances) -> Status {
    let margin = match diag.margin {
        None => return Status::Incompatible,
        Some(m) => m,
    };
    if margin.abs() <= tol.margin_band {
        return Status::Borderline;
    }
    if margin < 0.0 {
        return Status::Incompatible;
    }
    match witness {
        Some(w)
            if w.metric_mismatch <= tol.witness_tol
                && w.unitarity_residual <= tol.witness_tol
                && w.quasi_hermiticity.iter().all(|&r| r <= tol.witness_tol) =>
        {
            Status::Compatible
        }
        // A positive margin whose witness fails its residual checks is
        // surfaced, not silently classified.
        _ => Status::Borderline,
    }
}

fn build_witness(
    spectral: &[SpectralData],
    mixers: &[MixerMatrix],
    x: &ScalingVector,
    tol: &Tolerances,
) -> Result<Witness> {
    let theta1 = dyson::metric(&spectral[0], x, tol)?.theta;
    let sqrt_x = x.sqrt();
    let mut ys = Vec::with_capacity(mixers.len());
    let mut metric_mismatch = 0.0f64;
    let mut unitarity_residual = 0.0f64;
    let theta1_norm = theta1.fro_norm().max(f64::MIN_POSITIVE);
    for (j, mix) in mixers.iter().enumerate() {
        let y = second_scaling(mix, x)?;
        let theta_j = dyson::metric(&spectral[j + 1], &y, tol)?.theta;
        let mismatch = theta1.sub(&theta_j)?.fro_norm() / theta1_norm;
        metric_mismatch = metric_mismatch.max(mismatch);
        let inv_sqrt_y = y.sqrt().mapv(|v| 1.0 / v);
        let u = mix
            .matrix()
            .scale_rows(&sqrt_x)?
            .scale_cols(&inv_sqrt_y)?;
        unitarity_residual = unitarity_residual.max(u.unitarity_residual());
        ys.push(y);
    }
    let quasi_hermiticity = spectral
        .iter()
        .map(|sd| dyson::quasi_hermiticity_residual(sd.source(), &theta1))
        .collect::<Result<Vec<f64>>>()?;
    Ok(Witness {
        x: x.clone(),
        ys,
        theta: theta1,
        unitarity_residual,
        metric_mismatch,
        quasi_hermiticity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example;
    use ndarray::array;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn fixture_spectral() -> (SpectralData, SpectralData) {
        let (a1, a2) = example::pair(0.5, 0.5).unwrap();
        (
            dyson::analyze(&a1, &tols()).unwrap(),
            dyson::analyze(&a2, &tols()).unwrap(),
        )
    }

    #[test]
    fn mixer_of_identical_observables_is_identity() {
        let (sd1, _) = fixture_spectral();
        let m = mixer(&sd1, &sd1, &tols()).unwrap();
        let resid = m
            .matrix()
            .sub(&ComplexMatrix::identity(3))
            .unwrap()
            .fro_norm();
        assert!(resid < 1e-10, "mixer deviates from identity by {resid}");
    }

    #[test]
    fn mixer_closes_on_reference_factors() {
        // Directly check M omega_2 = omega_1 on the bundled reference
        // normalization rather than the canonicalized one.
        let o1d = example::reference_omega1_dagger(0.5).unwrap();
        let o2d = example::reference_omega2_dagger_half();
        let o1 = o1d.adjoint();
        let o2 = o2d.adjoint();
        let m = o1.matmul(&o2.inverse(1e-12).unwrap()).unwrap();
        let resid = m.matmul(&o2).unwrap().sub(&o1).unwrap().fro_norm();
        assert!(resid <= 1e-10 * o1.fro_norm());
    }

    #[test]
    fn scaled_factor_gives_scaled_mixer() {
        // omega_1 = 2 omega_2 => M = 2 I. Feed mixer() two decompositions of
        // the same observable and rescale one factor by hand.
        let (sd1, _) = fixture_spectral();
        let m_dagger = sd1
            .omega_dagger()
            .solve_matrix(sd1.omega_dagger(), 1e-12)
            .unwrap();
        let doubled = m_dagger.scale(C64::new(2.0, 0.0));
        let m = doubled.adjoint();
        let resid = m
            .sub(&ComplexMatrix::identity(3).scale(C64::new(2.0, 0.0)))
            .unwrap()
            .fro_norm();
        assert!(resid < 1e-10);
    }

    #[test]
    fn constraints_vanish_for_identity_mixer() {
        let (sd1, _) = fixture_spectral();
        let m = mixer(&sd1, &sd1, &tols()).unwrap();
        let cs = assemble_constraints(&m);
        assert_eq!(cs.rows(), 6);
        let worst = cs.c_real().iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        assert!(worst < 1e-10, "identity mixer should impose nothing, got {worst}");
    }

    #[test]
    fn constraints_vanish_for_diagonal_unitary_mixer() {
        let d = ComplexMatrix::from_complex_diagonal(&array![
            C64::new(0.0, 1.0),
            C64::new(1.0, 0.0)
        ]);
        let m = MixerMatrix { cond: 1.0, m: d };
        let cs = assemble_constraints(&m);
        let worst = cs.c_real().iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        assert!(worst < 1e-15);
    }

    #[test]
    fn hand_expanded_two_dimensional_constraint() {
        // M = [[1,1],[1,-1]]/sqrt(2): single complex constraint
        // (x_1 - x_2)/2 = 0 whose imaginary row vanishes identically.
        let r = 1.0 / 2f64.sqrt();
        let m = ComplexMatrix::from_real_rows(&[vec![r, r], vec![r, -r]]).unwrap();
        let mix = MixerMatrix { cond: 1.0, m };
        let cs = assemble_constraints(&mix);
        assert_eq!(cs.rows(), 2);
        assert!((cs.c_real()[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((cs.c_real()[(0, 1)] + 0.5).abs() < 1e-15);
        assert!(cs.c_real()[(1, 0)].abs() < 1e-15);
        assert!(cs.c_real()[(1, 1)].abs() < 1e-15);
        assert_eq!(
            cs.labels()[0],
            ConstraintLabel { row: 0, col: 1, part: ConstraintPart::Re }
        );

        let (x, diag) = solve_positive(&cs, &tols());
        let x = x.expect("feasible");
        assert_eq!(diag.nullspace_dim, 1);
        assert!((x.values()[0] - 1.0).abs() < 1e-9);
        assert!((x.values()[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn constraint_rows_reproduce_direct_evaluation() {
        // c_real . x must match the Re/Im parts of the strict upper triangle
        // of M^dag diag(x) M for arbitrary real x.
        let (sd1, sd2) = fixture_spectral();
        let mix = mixer(&sd1, &sd2, &tols()).unwrap();
        let cs = assemble_constraints(&mix);
        let x = array![0.3, -1.7, 2.4];
        let prod = cs.c_real().dot(&x);
        let sandwich = mix
            .matrix()
            .adjoint()
            .matmul(
                &ComplexMatrix::from_real_diagonal(&x)
                    .matmul(mix.matrix())
                    .unwrap(),
            )
            .unwrap();
        for (r, label) in cs.labels().iter().enumerate() {
            let entry = sandwich.as_array()[(label.row, label.col)];
            let want = match label.part {
                ConstraintPart::Re => entry.re,
                ConstraintPart::Im => entry.im,
            };
            assert!(
                (prod[r] - want).abs() <= 1e-12,
                "row {r} ({label:?}): {} vs {}",
                prod[r],
                want
            );
        }
    }

    #[test]
    fn unconstrained_three_dimensional_solve() {
        let mix = MixerMatrix { cond: 1.0, m: ComplexMatrix::identity(3) };
        let cs = assemble_constraints(&mix);
        let (x, diag) = solve_positive(&cs, &tols());
        let x = x.expect("identity mixer is trivially feasible");
        assert_eq!(diag.nullspace_dim, 3);
        assert!((diag.margin.unwrap() - 1.0).abs() < 1e-9);
        for &v in x.values() {
            assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn bundled_pair_is_infeasible_over_the_reals() {
        let (sd1, sd2) = fixture_spectral();
        let mix = mixer(&sd1, &sd2, &tols()).unwrap();
        let cs = assemble_constraints(&mix);
        let (x, diag) = solve_positive(&cs, &tols());
        assert!(x.is_none());
        assert_eq!(diag.nullspace_dim, 0);
    }

    #[test]
    fn second_scaling_identities() {
        let eye = MixerMatrix { cond: 1.0, m: ComplexMatrix::identity(2) };
        let x = ScalingVector::new(array![1.5, 0.5]).unwrap();
        let y = second_scaling(&eye, &x).unwrap();
        assert_eq!(y.values(), x.values());

        let two = MixerMatrix {
            cond: 1.0,
            m: ComplexMatrix::identity(2).scale(C64::new(2.0, 0.0)),
        };
        let x = ScalingVector::new(array![1.0, 1.0]).unwrap();
        let y = second_scaling(&two, &x).unwrap();
        assert!((y.values()[0] - 4.0).abs() < 1e-14);
        assert!((y.values()[1] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn second_scaling_matches_sandwich_diagonal() {
        let (sd1, sd2) = fixture_spectral();
        let mix = mixer(&sd1, &sd2, &tols()).unwrap();
        let x = ScalingVector::new(array![0.4, 1.1, 2.2]).unwrap();
        let y = second_scaling(&mix, &x).unwrap();
        let sandwich = mix
            .matrix()
            .adjoint()
            .matmul(
                &ComplexMatrix::from_real_diagonal(x.values())
                    .matmul(mix.matrix())
                    .unwrap(),
            )
            .unwrap();
        for i in 0..3 {
            let d = sandwich.as_array()[(i, i)];
            assert!((d.re - y.values()[i]).abs() <= 1e-12);
            assert!(d.im.abs() <= 1e-12);
        }
    }

    #[test]
    fn same_observable_twice_is_compatible() {
        let a1 = example::a1(0.5).unwrap();
        let verdict = decide(&a1, &a1, &tols()).unwrap();
        assert_eq!(verdict.status, Status::Compatible);
        let w = verdict.witness.expect("witness");
        assert!(w.metric_mismatch <= 1e-10);
        assert!(w.unitarity_residual <= 1e-9);
    }

    #[test]
    fn bundled_pair_is_incompatible() {
        let (a1, a2) = example::pair(0.5, 0.5).unwrap();
        let verdict = decide(&a1, &a2, &tols()).unwrap();
        assert_eq!(verdict.status, Status::Incompatible);
        assert!(verdict.witness.is_none());
        assert_eq!(verdict.certificate.nullspace_dim, 0);
    }

    #[test]
    fn decide_propagates_spectral_errors() {
        let rot = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let ok = ComplexMatrix::from_real_diagonal(&array![1.0, 2.0]);
        assert!(matches!(
            decide(&rot, &ok, &tols()),
            Err(Error::NonRealSpectrum { .. })
        ));
    }

    #[test]
    fn multi_with_duplicate_matches_pair_verdict() {
        let (a1, a2) = example::pair(0.5, 0.5).unwrap();
        let pair_verdict = decide(&a1, &a2, &tols()).unwrap();
        let multi = decide_multi(&[a1.clone(), a2.clone(), a2], &tols()).unwrap();
        assert_eq!(multi.status, pair_verdict.status);

        let same = decide_multi(&[a1.clone(), a1.clone(), a1], &tols()).unwrap();
        assert_eq!(same.status, Status::Compatible);
    }

    #[test]
    fn multi_requires_two_observables() {
        let a1 = example::a1(0.5).unwrap();
        assert!(matches!(
            decide_multi(&[a1], &tols()),
            Err(Error::TooFewObservables { .. })
        ));
    }
}
