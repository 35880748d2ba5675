use crate::error::{Error, Result};
use crate::geometry::DomainSpec;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Whether an inequality is a theorem (asserted) or a conjecture (only reported).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Conjecture,
}

/// One inequality evaluated on one spectrum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: String,
    pub shape: String,
    pub domain: Option<DomainSpec>,
    pub n: usize,
    pub h_min: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// (lhs − rhs)/|rhs|, sign flipped for upper bounds so that ≥ 0 means "holds".
    pub margin: f64,
    /// Margin threshold from the propagated eigenvalue error estimates.
    pub tolerance: f64,
    pub satisfied: bool,
    /// |margin| within tolerance.
    pub equality: bool,
    /// A vanishing gap made the lhs infinite (stored as a large finite sentinel).
    pub degenerate: bool,
    pub status: Status,
    pub citation: String,
}

impl InequalityReport {
    /// A proven inequality failing beyond tolerance.
    pub fn is_violation(&self) -> bool {
        !self.satisfied && self.status == Status::Proven
    }

    /// A conjectured inequality failing beyond tolerance.
    pub fn is_counterexample_candidate(&self) -> bool {
        !self.satisfied && self.status == Status::Conjecture
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    shape: &'a str,
    n: usize,
    h_min: Option<f64>,
    lhs: f64,
    rhs: f64,
    margin: f64,
    satisfied: bool,
    citation: &'a str,
}

/// CSV table with columns id, shape, n, h_min, lhs, rhs, margin, satisfied, citation.
pub fn write_csv<W: Write>(reports: &[InequalityReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            id: &r.id,
            shape: &r.shape,
            n: r.n,
            h_min: r.h_min,
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            satisfied: r.satisfied,
            citation: &r.citation,
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(reports: &[InequalityReport], mut out: W) -> Result<()> {
    for r in reports {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}
