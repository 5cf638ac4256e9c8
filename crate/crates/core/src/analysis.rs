//! Two-particle gate counts of Grover search per decomposition method.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decompose::{decompose, DecompositionRequest, Method, OddVariant};
use crate::error::{QuditError, Result};
use crate::grover::auto_iterations;

pub const MAX_TABLE_QUBITS: usize = 30;

pub const CSV_HEADER: &str =
    "n,iterations,qubit_per,qutrit_per,ququint_per,qubit_total,qutrit_total,ququint_total,ratio";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateCountRow {
    pub n: usize,
    pub iterations: usize,
    pub qubit_per: usize,
    pub qutrit_per: usize,
    pub ququint_per: usize,
    pub qubit_total: usize,
    pub qutrit_total: usize,
    pub ququint_total: usize,
    /// `qubit_total / ququint_total` rounded to three decimals; `None` when
    /// the ququint circuit has no two-particle gate.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateCountReport {
    pub odd_variant: OddVariant,
    pub rows: Vec<GateCountRow>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = QuditError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(QuditError::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Two-particle gates in the compiled `C^{n-1}Z` for `method`.
pub fn per_gate_count(n: usize, method: Method, odd: OddVariant) -> Result<usize> {
    let req = DecompositionRequest::new(n, method).odd_variant(odd);
    Ok(decompose(&req)?.two_particle_gate_count)
}

pub fn count_row(n: usize, odd: OddVariant) -> Result<GateCountRow> {
    let iterations = auto_iterations(n);
    let qubit_per = per_gate_count(n, Method::Qubit, odd)?;
    let qutrit_per = per_gate_count(n, Method::Qutrit, odd)?;
    let ququint_per = per_gate_count(n, Method::Ququint, odd)?;
    // two multi-controlled gates per iteration: oracle and diffusion
    let total = |per: usize| iterations * 2 * per;
    let ratio = (ququint_per > 0)
        .then(|| ((qubit_per as f64 / ququint_per as f64) * 1000.0).round() / 1000.0);
    Ok(GateCountRow {
        n,
        iterations,
        qubit_per,
        qutrit_per,
        ququint_per,
        qubit_total: total(qubit_per),
        qutrit_total: total(qutrit_per),
        ququint_total: total(ququint_per),
        ratio,
    })
}

pub fn count_table(n_min: usize, n_max: usize, odd: OddVariant) -> Result<GateCountReport> {
    if !(2 <= n_min && n_min <= n_max && n_max <= MAX_TABLE_QUBITS) {
        return Err(QuditError::InvalidRange(format!(
            "need 2 <= {n_min} <= {n_max} <= {MAX_TABLE_QUBITS}"
        )));
    }
    let rows = (n_min..=n_max)
        .map(|n| count_row(n, odd))
        .collect::<Result<_>>()?;
    Ok(GateCountReport { odd_variant: odd, rows })
}

pub fn emit_report(report: &GateCountReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &report.rows {
                let ratio = r.ratio.map_or_else(|| "inf".to_string(), |x| format!("{x:.3}"));
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.iterations,
                    r.qubit_per,
                    r.qutrit_per,
                    r.ququint_per,
                    r.qubit_total,
                    r.qutrit_total,
                    r.ququint_total,
                    ratio
                )
                .expect("writing to a String cannot fail");
            }
            Ok(out.into_bytes())
        }
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)
                .map_err(|e| QuditError::Document(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}
