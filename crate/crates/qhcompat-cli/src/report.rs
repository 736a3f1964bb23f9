//! Matrix interchange format and machine-readable reports.
//!
//! Matrices travel as minimal JSON objects (`n`, rows of `[re, im]` pairs,
//! optional name) so fixtures stay human-diffable and parseable from any
//! language. Reports serialize deterministically: keys are sorted and floats
//! use the shortest round-trip representation.

use ndarray::Array2;
use serde::{Deserialize, Serialize};
use std::path::Path;

use qhcompat_core::compat::CompatibilityVerdict;
use qhcompat_core::matcore::{C64, ComplexMatrix};
use qhcompat_core::{ScalingVector, Tolerances};

/// On-disk matrix: `n` rows of `n` `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, name: Option<&str>) -> Self {
        let n = m.n();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = m.as_array()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self { n, name: name.map(str::to_owned), rows }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.rows.len() != self.n || self.rows.iter().any(|r| r.len() != self.n) {
            return Err(format!(
                "matrix payload is not {n} x {n}",
                n = self.n
            ));
        }
        let mut data = Array2::<C64>::zeros((self.n, self.n));
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(format!("non-finite entry at ({i}, {j})"));
                }
                data[(i, j)] = C64::new(re, im);
            }
        }
        ComplexMatrix::new(data).map_err(|e| e.to_string())
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<(), String> {
        let text = to_sorted_pretty(self)?;
        std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
    }
}

#[derive(Debug, Serialize)]
pub struct ToleranceReport {
    pub eig_tol: f64,
    pub null_tol: f64,
    pub herm_tol: f64,
    pub rank_tol: f64,
    pub eig_real_tol: f64,
    pub degen_tol: f64,
    pub pos_margin: f64,
    pub margin_band: f64,
    pub witness_tol: f64,
    pub pd_tol: f64,
}

impl From<&Tolerances> for ToleranceReport {
    fn from(t: &Tolerances) -> Self {
        Self {
            eig_tol: t.eig_tol,
            null_tol: t.null_tol,
            herm_tol: t.herm_tol,
            rank_tol: t.rank_tol,
            eig_real_tol: t.eig_real_tol,
            degen_tol: t.degen_tol,
            pos_margin: t.pos_margin,
            margin_band: t.margin_band,
            witness_tol: t.witness_tol,
            pd_tol: t.pd_tol,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub x: Vec<f64>,
    /// Derived scalings, one per observable after the first.
    pub ys: Vec<Vec<f64>>,
    pub theta: MatrixFile,
    pub unitarity_residual: f64,
    pub metric_mismatch: f64,
    pub quasi_hermiticity: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct CertificateReport {
    pub nullspace_dim: usize,
    pub lp_margin: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub status: String,
    pub agrees: bool,
    pub search_caveat: bool,
}

/// The common envelope every command emits on its success stream.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated: Option<serde_json::Value>,
    pub tolerances: ToleranceReport,
    pub version: String,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: &str, status: &str, dimension: usize, tol: &Tolerances) -> Self {
        Self {
            command: command.to_owned(),
            status: status.to_owned(),
            dimension,
            inputs: None,
            params: None,
            eigenvalues: None,
            witness: None,
            certificate: None,
            oracle: None,
            check: None,
            generated: None,
            tolerances: tol.into(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            elapsed_ms: 0,
        }
    }

    pub fn with_verdict(mut self, verdict: &CompatibilityVerdict) -> Self {
        self.eigenvalues = Some(
            verdict
                .spectra
                .iter()
                .map(|s| s.to_vec())
                .collect(),
        );
        self.certificate = Some(CertificateReport {
            nullspace_dim: verdict.certificate.nullspace_dim,
            lp_margin: verdict.certificate.lp_margin,
        });
        if let Some(w) = &verdict.witness {
            self.witness = Some(WitnessReport {
                x: w.x.values().to_vec(),
                ys: w.ys.iter().map(|y| y.values().to_vec()).collect(),
                theta: MatrixFile::from_matrix(&w.theta, Some("theta")),
                unitarity_residual: w.unitarity_residual,
                metric_mismatch: w.metric_mismatch,
                quasi_hermiticity: w.quasi_hermiticity.clone(),
            });
        }
        self
    }
}

/// Error envelope, printed on stderr.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub status: String,
    pub error: ErrorDetail,
}

#[derive(Debug, Serialize)]
pub struct ErrorDetail {
    pub kind: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(kind: &str, message: &str) -> Self {
        Self {
            status: "error".to_owned(),
            error: ErrorDetail { kind: kind.to_owned(), message: message.to_owned() },
        }
    }
}

/// Serializes with sorted keys (the default `serde_json` map is ordered) by
/// round-tripping through `Value`.
pub fn to_sorted_pretty<T: Serialize>(value: &T) -> Result<String, String> {
    let v = serde_json::to_value(value).map_err(|e| e.to_string())?;
    let mut text = serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?;
    text.push('\n');
    Ok(text)
}

pub fn scaling_to_vec(s: &ScalingVector) -> Vec<f64> {
    s.values().to_vec()
}
