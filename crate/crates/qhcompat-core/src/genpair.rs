//! Constructive generation of compatible observable sets.
//!
//! Runs the compatibility criterion backwards: choose a unitary, two
//! positive scalings and an invertible base factor, assemble the mixer
//! `M = c_1^{-1} U c_2`, derive the remaining factors, and conjugate chosen
//! real spectra into observables. Every generated set carries its planted
//! shared metric, which makes it a self-certifying fixture.

use ndarray::{Array1, Array2};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dyson::ScalingVector;
use crate::error::{Error, Result};
use crate::matcore::{self, C64, ComplexMatrix};
use crate::tol::Tolerances;

/// Knobs for the generator.
#[derive(Debug, Clone)]
pub struct GenOptions {
    /// Column scalings are drawn uniformly from `[c_min, c_max]`.
    pub c_min: f64,
    pub c_max: f64,
    /// Condition-number cap on the random base factor.
    pub cond_cap: f64,
    /// How often to redraw an ill-conditioned base factor before giving up.
    pub max_factor_tries: usize,
    /// Spectra are drawn uniformly from this interval.
    pub spectrum_lo: f64,
    pub spectrum_hi: f64,
    /// Minimum gap between adjacent eigenvalues.
    pub min_gap: f64,
    /// Fixed 2x2 unitary ansatz parameters `(alpha, beta, gamma, delta)`;
    /// only honored for `n = 2` pairs.
    pub ansatz: Option<[f64; 4]>,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self {
            c_min: 0.2,
            c_max: 5.0,
            cond_cap: 50.0,
            max_factor_tries: 10,
            spectrum_lo: -2.0,
            spectrum_hi: 2.0,
            min_gap: 0.1,
            ansatz: None,
        }
    }
}

/// A compatible set of observables with its planted shared metric.
#[derive(Debug, Clone)]
pub struct GeneratedSet {
    pub observables: Vec<ComplexMatrix>,
    /// The shared metric all observables are quasi-Hermitian against.
    pub theta: ComplexMatrix,
    /// The per-observable factors, `omega_j a_j omega_j^{-1}` diagonal.
    pub omegas: Vec<ComplexMatrix>,
    /// Squared column scalings `c_j^2`.
    pub scalings: Vec<ScalingVector>,
    /// Planted spectra, ascending.
    pub spectra: Vec<Array1<f64>>,
    pub seed: u64,
}

/// A compatible pair; the two-observable view of [`GeneratedSet`].
#[derive(Debug, Clone)]
pub struct GeneratedPair {
    pub a1: ComplexMatrix,
    pub a2: ComplexMatrix,
    pub theta: ComplexMatrix,
    pub omega1: ComplexMatrix,
    pub omega2: ComplexMatrix,
    pub scaling1: ScalingVector,
    pub scaling2: ScalingVector,
    pub spectrum1: Array1<f64>,
    pub spectrum2: Array1<f64>,
    pub seed: u64,
}

/// Haar-distributed unitary, deterministic per seed. Built from a complex
/// Gaussian draw by modified Gram-Schmidt with a second orthogonalization
/// pass; the positive-diagonal convention of the implicit triangular factor
/// fixes the phases.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    haar_unitary(n, &mut rng)
}

fn haar_unitary(n: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix {
    'redraw: loop {
        let mut z = Array2::<C64>::zeros((n, n));
        let scale = 1.0 / 2f64.sqrt();
        for i in 0..n {
            for j in 0..n {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                z[(i, j)] = C64::new(re * scale, im * scale);
            }
        }
        // Modified Gram-Schmidt, two passes per column.
        for j in 0..n {
            for _pass in 0..2 {
                for i in 0..j {
                    let mut proj = C64::new(0.0, 0.0);
                    for r in 0..n {
                        proj += z[(r, i)].conj() * z[(r, j)];
                    }
                    for r in 0..n {
                        let qi = z[(r, i)];
                        z[(r, j)] -= qi * proj;
                    }
                }
            }
            let norm: f64 = (0..n).map(|r| z[(r, j)].norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue 'redraw;
            }
            for r in 0..n {
                z[(r, j)] = z[(r, j)] / norm;
            }
        }
        return ComplexMatrix::new(z).expect("finite by construction");
    }
}

/// `exp([[i alpha, i gamma + delta], [i gamma - delta, i beta]])`: the full
/// four-parameter family of 2x2 unitaries up to phase conventions.
pub fn ansatz_unitary_2x2(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<ComplexMatrix> {
    let k = ComplexMatrix::from_rows(&[
        vec![C64::new(0.0, alpha), C64::new(delta, gamma)],
        vec![C64::new(-delta, gamma), C64::new(0.0, beta)],
    ])?;
    matcore::expm_antihermitian(&k, 1e-12)
}

/// Assembles a compatible set from explicitly chosen ingredients:
/// unitaries `u[j]` and scalings `c[j]` (as squared values in
/// [`ScalingVector`]), a base factor for the second observable, and spectra.
/// `u[0]` pairs the first factor with the second; further entries pair it
/// with the third onward.
pub fn assemble_set(
    unitaries: &[ComplexMatrix],
    scalings: &[ScalingVector],
    base_factor: &ComplexMatrix,
    spectra: &[Array1<f64>],
    seed: u64,
    tol: &Tolerances,
) -> Result<GeneratedSet> {
    let k = unitaries.len() + 1;
    if scalings.len() != k || spectra.len() != k {
        return Err(Error::InvalidParameter(format!(
            "need {k} scalings and spectra for {} unitaries",
            unitaries.len()
        )));
    }
    let n = base_factor.n();
    for u in unitaries {
        if u.n() != n {
            return Err(Error::DimensionMismatch { left: n, right: u.n() });
        }
    }

    let c: Vec<Array1<f64>> = scalings.iter().map(|s| s.sqrt()).collect();
    // M_j = c_1^{-1} U_j c_j inverts the unitarity criterion exactly.
    let inv_c1 = c[0].mapv(|v| 1.0 / v);
    let mixer_for = |j: usize| -> Result<ComplexMatrix> {
        unitaries[j - 1].scale_rows(&inv_c1)?.scale_cols(&c[j])
    };

    // omega_2 is the drawn base; omega_1 = M_2 omega_2; omega_j = M_j^{-1} omega_1.
    let mut omegas: Vec<ComplexMatrix> = Vec::with_capacity(k);
    let m2 = mixer_for(1)?;
    let omega1 = m2.matmul(base_factor)?;
    omegas.push(omega1.clone());
    omegas.push(base_factor.clone());
    for j in 2..k {
        let mj = mixer_for(j)?;
        omegas.push(mj.solve_matrix(&omega1, tol.rank_tol)?);
    }

    let mut observables = Vec::with_capacity(k);
    for (omega, spectrum) in omegas.iter().zip(spectra.iter()) {
        if spectrum.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: spectrum.len() });
        }
        // A = omega^{-1} diag(a) omega
        let rhs = ComplexMatrix::from_real_diagonal(spectrum).matmul(omega)?;
        observables.push(omega.solve_matrix(&rhs, tol.rank_tol)?);
    }

    let theta = omegas[0]
        .adjoint()
        .scale_cols(scalings[0].values())?
        .matmul(&omegas[0])?
        .hermitize();

    let set = GeneratedSet {
        observables,
        theta,
        omegas,
        scalings: scalings.to_vec(),
        spectra: spectra.to_vec(),
        seed,
    };
    validate_set(&set, tol)?;
    Ok(set)
}

fn validate_set(set: &GeneratedSet, tol: &Tolerances) -> Result<()> {
    let theta_norm = set.theta.fro_norm().max(f64::MIN_POSITIVE);
    // All planted factors must rebuild the same metric.
    for (omega, scaling) in set.omegas.iter().zip(set.scalings.iter()) {
        let rebuilt = omega
            .adjoint()
            .scale_cols(scaling.values())?
            .matmul(omega)?;
        let defect = rebuilt.sub(&set.theta)?.fro_norm();
        if defect > 1e-10 * theta_norm {
            return Err(Error::ConvergenceFailure);
        }
    }
    for a in &set.observables {
        let r = crate::dyson::quasi_hermiticity_residual(a, &set.theta)?;
        if r > 1e-10 {
            return Err(Error::ConvergenceFailure);
        }
    }
    let eigs = set.theta.hermitian_eigenvalues(tol.herm_tol)?;
    if eigs[0] <= 0.0 {
        return Err(Error::MetricNotPositive { min_eig: eigs[0] });
    }
    Ok(())
}

/// Draws and assembles a compatible set of `k` observables sharing one metric.
pub fn generate_set(n: usize, k: usize, seed: u64, opts: &GenOptions, tol: &Tolerances) -> Result<GeneratedSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if k < 2 {
        return Err(Error::TooFewObservables { min: 2, got: k });
    }
    let span = opts.spectrum_hi - opts.spectrum_lo;
    if !(span > 0.0) || (n - 1) as f64 * opts.min_gap >= span {
        return Err(Error::DegenerateSpectrumRequested {
            gap: opts.min_gap,
            n,
            lo: opts.spectrum_lo,
            hi: opts.spectrum_hi,
        });
    }
    if opts.ansatz.is_some() && n != 2 {
        return Err(Error::InvalidParameter(
            "the 2x2 ansatz only applies to n = 2".into(),
        ));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut tries = 0;
    loop {
        tries += 1;
        if tries > opts.max_factor_tries {
            return Err(Error::IllConditioned {
                cap: opts.cond_cap,
                tries: opts.max_factor_tries,
            });
        }

        let mut unitaries = Vec::with_capacity(k - 1);
        for j in 0..k - 1 {
            let u = match (j, opts.ansatz) {
                (0, Some([al, be, ga, de])) => ansatz_unitary_2x2(al, be, ga, de)?,
                _ => haar_unitary(n, &mut rng),
            };
            unitaries.push(u);
        }
        let scalings: Vec<ScalingVector> = (0..k)
            .map(|_| draw_scaling(n, opts, &mut rng))
            .collect::<Result<_>>()?;
        let base = match draw_factor(n, opts, &mut rng) {
            Some(b) => b,
            None => continue,
        };
        let spectra: Vec<Array1<f64>> = (0..k)
            .map(|_| draw_spectrum(n, opts, &mut rng))
            .collect::<Result<_>>()?;

        match assemble_set(&unitaries, &scalings, &base, &spectra, seed, tol) {
            Ok(set) => return Ok(set),
            Err(Error::ConvergenceFailure) => continue, // conditioning tail, redraw
            Err(e) => return Err(e),
        }
    }
}

/// Draws and assembles a compatible pair.
pub fn generate(n: usize, seed: u64, opts: &GenOptions, tol: &Tolerances) -> Result<GeneratedPair> {
    let set = generate_set(n, 2, seed, opts, tol)?;
    let GeneratedSet { mut observables, theta, mut omegas, mut scalings, mut spectra, seed } = set;
    let a2 = observables.pop().expect("k = 2");
    let a1 = observables.pop().expect("k = 2");
    let omega2 = omegas.pop().expect("k = 2");
    let omega1 = omegas.pop().expect("k = 2");
    let scaling2 = scalings.pop().expect("k = 2");
    let scaling1 = scalings.pop().expect("k = 2");
    let spectrum2 = spectra.pop().expect("k = 2");
    let spectrum1 = spectra.pop().expect("k = 2");
    Ok(GeneratedPair {
        a1,
        a2,
        theta,
        omega1,
        omega2,
        scaling1,
        scaling2,
        spectrum1,
        spectrum2,
        seed,
    })
}

fn draw_scaling(n: usize, opts: &GenOptions, rng: &mut ChaCha12Rng) -> Result<ScalingVector> {
    let c: Array1<f64> =
        Array1::from_iter((0..n).map(|_| rng.random_range(opts.c_min..opts.c_max)));
    ScalingVector::new(c.mapv(|v| v * v))
}

fn draw_factor(n: usize, opts: &GenOptions, rng: &mut ChaCha12Rng) -> Option<ComplexMatrix> {
    let mut z = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            z[(i, j)] = C64::new(re, im);
        }
    }
    let m = ComplexMatrix::new(z).ok()?;
    match m.condition() {
        Ok(c) if c <= opts.cond_cap => Some(m),
        _ => None,
    }
}

fn draw_spectrum(n: usize, opts: &GenOptions, rng: &mut ChaCha12Rng) -> Result<Array1<f64>> {
    for _ in 0..1000 {
        let mut vals: Vec<f64> = (0..n)
            .map(|_| rng.random_range(opts.spectrum_lo..opts.spectrum_hi))
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if n == 1 || vals.windows(2).all(|w| w[1] - w[0] >= opts.min_gap) {
            return Ok(Array1::from(vals));
        }
    }
    Err(Error::DegenerateSpectrumRequested {
        gap: opts.min_gap,
        n,
        lo: opts.spectrum_lo,
        hi: opts.spectrum_hi,
    })
}
