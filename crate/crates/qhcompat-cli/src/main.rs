//! `qhcompat`: decide whether matrices with real spectra admit a shared
//! positive-definite metric, construct the witness when one exists, and
//! generate compatible fixtures.
//!
//! Exit codes: 0 compatible (or plain success), 1 incompatible, 2 error,
//! 3 borderline. Reports go to stdout as deterministic JSON; errors go to
//! stderr as a structured envelope.

mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::time::Instant;

use qhcompat_core::compat::{self, Status};
use qhcompat_core::dyson::{self, ScalingVector};
use qhcompat_core::genpair::{self, GenOptions};
use qhcompat_core::matcore::ComplexMatrix;
use qhcompat_core::{example, oracle, Tolerances};

use report::{ErrorReport, MatrixFile, OracleReport, Report};

#[derive(Parser)]
#[command(name = "qhcompat", version, about = "Shared-metric compatibility of non-Hermitian matrices with real spectra")]
struct Cli {
    /// Override the decision tolerance (witness acceptance threshold).
    /// The environment variable QHCOMPAT_TOL does the same with lower
    /// precedence.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one matrix: spectrum and its default metric, or diagnostics
    /// of a provided metric.
    Check {
        /// Matrix file (JSON: n, rows of [re, im] pairs).
        matrix: PathBuf,
        /// Optional metric to test against the matrix.
        #[arg(long)]
        theta: Option<PathBuf>,
    },
    /// Decide whether two or more matrices admit one shared metric.
    Compat {
        /// Two or more matrix files of equal dimension.
        #[arg(num_args = 2.., required = true)]
        matrices: Vec<PathBuf>,
        /// Cross-check with the brute-force certifier (dimension <= 4).
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a compatible pair with a planted shared metric.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Output directory for a1.json, a2.json, theta.json.
        #[arg(long)]
        out: PathBuf,
        /// Four comma-separated reals selecting the 2x2 unitary ansatz
        /// (only valid with --n 2).
        #[arg(long)]
        ansatz: Option<String>,
    },
    /// Run the bundled parametric example pair through the full pipeline.
    Example {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        a: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let tol = resolve_tolerances(cli.tol);
    let code = match run(cli.command, &tol, started) {
        Ok(code) => code,
        Err(err) => {
            let text = report::to_sorted_pretty(&err).unwrap_or_else(|e| {
                format!("{{\"error\":{{\"kind\":\"Internal\",\"message\":\"{e}\"}},\"status\":\"error\"}}\n")
            });
            eprint!("{text}");
            2
        }
    };
    std::process::exit(code);
}

fn resolve_tolerances(flag: Option<f64>) -> Tolerances {
    let base = Tolerances::default();
    let from_env = std::env::var("QHCOMPAT_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok());
    match flag.or(from_env) {
        Some(t) if t > 0.0 && t.is_finite() => base.with_witness_tol(t),
        _ => base,
    }
}

fn run(command: Command, tol: &Tolerances, started: Instant) -> Result<i32, ErrorReport> {
    match command {
        Command::Check { matrix, theta } => cmd_check(&matrix, theta.as_deref(), tol, started),
        Command::Compat { matrices, oracle } => cmd_compat(&matrices, oracle, tol, started),
        Command::Gen { n, seed, out, ansatz } => {
            cmd_gen(n, seed, &out, ansatz.as_deref(), tol, started)
        }
        Command::Example { s, a } => cmd_example(s, a, tol, started),
    }
}

fn core_err(e: qhcompat_core::Error) -> ErrorReport {
    use qhcompat_core::Error as E;
    let kind = match &e {
        E::NonRealSpectrum { .. } => "NonRealSpectrum",
        E::DegenerateSpectrum { .. } => "DegenerateSpectrum",
        E::DimensionMismatch { .. } => "DimensionMismatch",
        E::SingularMatrix { .. } => "SingularMatrix",
        E::NotHermitian { .. } => "NotHermitian",
        E::ConvergenceFailure => "ConvergenceFailure",
        E::NotSquare { .. } => "NotSquare",
        E::NonFiniteEntry => "NonFiniteEntry",
        E::MetricNotPositive { .. } => "MetricNotPositive",
        E::DegenerateSpectrumRequested { .. } => "DegenerateSpectrumRequested",
        E::IllConditioned { .. } => "IllConditioned",
        E::OracleDimensionExceeded { .. } => "OracleDimensionExceeded",
        E::TooFewObservables { .. } => "TooFewObservables",
        E::InvalidScaling => "InvalidScaling",
        E::InvalidParameter(_) => "InvalidParameter",
    };
    ErrorReport::new(kind, &e.to_string())
}

fn parse_err(message: &str) -> ErrorReport {
    ErrorReport::new("ParseError", message)
}

fn usage_err(message: &str) -> ErrorReport {
    ErrorReport::new("UsageError", message)
}

fn read_matrix(path: &std::path::Path) -> Result<ComplexMatrix, ErrorReport> {
    let file = MatrixFile::read(path).map_err(|m| parse_err(&m))?;
    file.to_matrix().map_err(|m| parse_err(&m))
}

fn emit(mut rep: Report, started: Instant) -> Result<(), ErrorReport> {
    rep.elapsed_ms = started.elapsed().as_millis() as u64;
    let text = report::to_sorted_pretty(&rep).map_err(|m| ErrorReport::new("Internal", &m))?;
    print!("{text}");
    Ok(())
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Compatible => 0,
        Status::Incompatible => 1,
        Status::Borderline => 3,
    }
}

fn cmd_check(
    matrix_path: &std::path::Path,
    theta_path: Option<&std::path::Path>,
    tol: &Tolerances,
    started: Instant,
) -> Result<i32, ErrorReport> {
    let a = read_matrix(matrix_path)?;
    let sd = dyson::analyze(&a, tol).map_err(core_err)?;
    let n = sd.n();

    match theta_path {
        None => {
            // Default family member: the plain Gram matrix of the factor.
            let m = dyson::metric(&sd, &ScalingVector::ones(n), tol).map_err(core_err)?;
            let resid = dyson::quasi_hermiticity_residual(&a, &m.theta).map_err(core_err)?;
            let mut rep = Report::new("check", "compatible", n, tol);
            rep.inputs = Some(vec![matrix_path.display().to_string()]);
            rep.eigenvalues = Some(vec![sd.eigenvalues().to_vec()]);
            rep.check = Some(serde_json::json!({
                "theta": MatrixFile::from_matrix(&m.theta, Some("theta")),
                "quasi_hermiticity_residual": resid,
            }));
            emit(rep, started)?;
            Ok(0)
        }
        Some(tp) => {
            let theta = read_matrix(tp)?;
            let resid = dyson::quasi_hermiticity_residual(&a, &theta).map_err(core_err)?;
            let herm = theta.hermiticity_residual();
            let min_eig = theta
                .hermitize()
                .hermitian_eigenvalues(tol.herm_tol.max(1e-6))
                .map_err(core_err)?[0];
            let accepted =
                resid <= tol.witness_tol && herm <= tol.herm_tol.max(1e-9) && min_eig > 0.0;
            let status = if accepted { "compatible" } else { "incompatible" };
            let mut rep = Report::new("check", status, n, tol);
            rep.inputs = Some(vec![
                matrix_path.display().to_string(),
                tp.display().to_string(),
            ]);
            rep.eigenvalues = Some(vec![sd.eigenvalues().to_vec()]);
            rep.check = Some(serde_json::json!({
                "quasi_hermiticity_residual": resid,
                "hermiticity_residual": herm,
                "min_metric_eigenvalue": min_eig,
            }));
            emit(rep, started)?;
            Ok(if accepted { 0 } else { 1 })
        }
    }
}

fn cmd_compat(
    paths: &[PathBuf],
    with_oracle: bool,
    tol: &Tolerances,
    started: Instant,
) -> Result<i32, ErrorReport> {
    if paths.len() < 2 {
        return Err(usage_err("compat needs at least two matrix files"));
    }
    let matrices: Vec<ComplexMatrix> = paths
        .iter()
        .map(|p| read_matrix(p))
        .collect::<Result<_, _>>()?;
    let n = matrices[0].n();
    let verdict = compat::decide_multi(&matrices, tol).map_err(core_err)?;

    let mut rep = Report::new("compat", verdict.status.as_str(), n, tol).with_verdict(&verdict);
    rep.inputs = Some(paths.iter().map(|p| p.display().to_string()).collect());

    if with_oracle {
        let slow = oracle::decide_bruteforce(&matrices, tol).map_err(core_err)?;
        let (ostatus, caveat) = match &slow {
            oracle::OracleVerdict::Compatible(_) => ("compatible", false),
            oracle::OracleVerdict::Incompatible { search_caveat } => {
                ("incompatible", *search_caveat)
            }
        };
        let agrees = match verdict.status {
            Status::Compatible => slow.is_compatible(),
            Status::Incompatible => !slow.is_compatible(),
            Status::Borderline => true, // nothing sharp to disagree with
        };
        rep.oracle = Some(OracleReport {
            status: ostatus.to_owned(),
            agrees,
            search_caveat: caveat,
        });
    }
    emit(rep, started)?;
    Ok(status_code(verdict.status))
}

fn parse_ansatz(raw: &str) -> Result<[f64; 4], ErrorReport> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 4 {
        return Err(usage_err("--ansatz expects four comma-separated reals"));
    }
    let mut vals = [0.0f64; 4];
    for (i, p) in parts.iter().enumerate() {
        vals[i] = p
            .trim()
            .parse::<f64>()
            .map_err(|_| usage_err(&format!("--ansatz component {p:?} is not a number")))?;
        if !vals[i].is_finite() {
            return Err(usage_err("--ansatz components must be finite"));
        }
    }
    Ok(vals)
}

fn cmd_gen(
    n: usize,
    seed: u64,
    out: &std::path::Path,
    ansatz: Option<&str>,
    tol: &Tolerances,
    started: Instant,
) -> Result<i32, ErrorReport> {
    if n < 2 {
        return Err(usage_err("gen needs --n of at least 2"));
    }
    let mut opts = GenOptions::default();
    if let Some(raw) = ansatz {
        if n != 2 {
            return Err(usage_err("--ansatz is only valid with --n 2"));
        }
        opts.ansatz = Some(parse_ansatz(raw)?);
    }
    let pair = genpair::generate(n, seed, &opts, tol).map_err(core_err)?;

    std::fs::create_dir_all(out).map_err(|e| {
        ErrorReport::new("IoError", &format!("cannot create {}: {e}", out.display()))
    })?;
    let files = [
        ("a1.json", MatrixFile::from_matrix(&pair.a1, Some("a1"))),
        ("a2.json", MatrixFile::from_matrix(&pair.a2, Some("a2"))),
        ("theta.json", MatrixFile::from_matrix(&pair.theta, Some("theta"))),
    ];
    let mut written = Vec::new();
    for (name, payload) in &files {
        let path = out.join(name);
        payload
            .write(&path)
            .map_err(|m| ErrorReport::new("IoError", &m))?;
        written.push(path.display().to_string());
    }

    let mut rep = Report::new("gen", "compatible", n, tol);
    rep.generated = Some(serde_json::json!({
        "seed": pair.seed,
        "files": written,
        "spectra": [pair.spectrum1.to_vec(), pair.spectrum2.to_vec()],
        "scalings": [
            report::scaling_to_vec(&pair.scaling1),
            report::scaling_to_vec(&pair.scaling2),
        ],
    }));
    rep.eigenvalues = Some(vec![pair.spectrum1.to_vec(), pair.spectrum2.to_vec()]);
    emit(rep, started)?;
    Ok(0)
}

fn cmd_example(s: f64, a: f64, tol: &Tolerances, started: Instant) -> Result<i32, ErrorReport> {
    if !(s.is_finite() && a.is_finite() && s.abs() < 1.0 && a.abs() < 1.0) {
        return Err(usage_err(
            "example needs |s| < 1 and |a| < 1 so both spectra stay real and nondegenerate",
        ));
    }
    let (a1, a2) = example::pair(s, a).map_err(core_err)?;
    let verdict = compat::decide(&a1, &a2, tol).map_err(core_err)?;
    let mut rep =
        Report::new("example", verdict.status.as_str(), a1.n(), tol).with_verdict(&verdict);
    rep.params = Some(serde_json::json!({ "s": s, "a": a }));
    emit(rep, started)?;
    Ok(status_code(verdict.status))
}
