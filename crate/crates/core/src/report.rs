//! Rendering of identity reports as JSON Lines, CSV or an aligned table.

use std::io::Write;

use serde::Serialize;

use crate::error::{MzvError, Result};
use crate::identities::{IdentityId, IdentityReport, Params};
use crate::scalar::RealField;

/// Significant digits used when printing residuals.
const RESIDUAL_DIGITS: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" | "jsonl" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(MzvError::Parse(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Serialize)]
struct Row<'a> {
    id: IdentityId,
    params: &'a Params,
    residual: String,
    tolerance: String,
    pass: bool,
}

fn row<T: RealField>(r: &IdentityReport<T>) -> Row<'_> {
    Row {
        id: r.id,
        params: &r.params,
        residual: r.residual.to_scientific(RESIDUAL_DIGITS),
        tolerance: r.tolerance.to_scientific(2),
        pass: r.pass,
    }
}

fn io(e: std::io::Error) -> MzvError {
    MzvError::from(e)
}

/// One JSON object per line. Timing is left out so output is reproducible.
pub fn write_json<T: RealField, W: Write>(reports: &[IdentityReport<T>], mut out: W) -> Result<()> {
    for r in reports {
        let line = serde_json::to_string(&row(r)).map_err(|e| MzvError::Parse(e.to_string()))?;
        writeln!(out, "{line}").map_err(io)?;
    }
    Ok(())
}

pub fn write_csv<T: RealField, W: Write>(reports: &[IdentityReport<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["id", "params", "residual", "tolerance", "pass"])
        .map_err(|e| MzvError::Parse(e.to_string()))?;
    for r in reports {
        let row = row(r);
        w.write_record([
            row.id.as_str(),
            &r.params.to_string(),
            &row.residual,
            &row.tolerance,
            if row.pass { "PASS" } else { "FAIL" },
        ])
        .map_err(|e| MzvError::Parse(e.to_string()))?;
    }
    w.flush().map_err(io)
}

pub fn write_table<T: RealField, W: Write>(reports: &[IdentityReport<T>], mut out: W) -> Result<()> {
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| {
            let row = row(r);
            [
                row.id.to_string(),
                r.params.to_string(),
                row.residual,
                if row.pass { "PASS".into() } else { "FAIL".into() },
            ]
        })
        .collect();
    let header = ["ID", "PARAMS", "RESIDUAL", "RESULT"];
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 4]| {
        format!(
            "{:<w0$}  {:<w1$}  {:>w2$}  {}",
            cells[0],
            cells[1],
            cells[2],
            cells[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        )
    };
    writeln!(out, "{}", line(header).trim_end()).map_err(io)?;
    for r in &rows {
        writeln!(out, "{}", line([&r[0], &r[1], &r[2], &r[3]]).trim_end()).map_err(io)?;
    }
    Ok(())
}

pub fn write_reports<T: RealField, W: Write>(reports: &[IdentityReport<T>], format: Format, out: W) -> Result<()> {
    match format {
        Format::Json => write_json(reports, out),
        Format::Csv => write_csv(reports, out),
        Format::Table => write_table(reports, out),
    }
}

/// Pass/fail counts and the largest residual seen.
#[derive(Clone, Debug)]
pub struct Summary<T> {
    pub total: usize,
    pub passed: usize,
    pub worst: Option<(IdentityId, Params, T)>,
}

impl<T: RealField> Summary<T> {
    pub fn of(reports: &[IdentityReport<T>]) -> Self {
        let worst = reports
            .iter()
            .max_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap_or(std::cmp::Ordering::Equal))
            .map(|r| (r.id, r.params.clone(), r.residual.clone()));
        Summary {
            total: reports.len(),
            passed: reports.iter().filter(|r| r.pass).count(),
            worst,
        }
    }

    pub fn failed(&self) -> usize {
        self.total - self.passed
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

impl<T: RealField> std::fmt::Display for Summary<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} checked, {} passed, {} failed", self.total, self.passed, self.failed())?;
        if let Some((id, p, r)) = &self.worst {
            write!(f, "; max residual {} at {id} {p}", r.to_scientific(RESIDUAL_DIGITS))?;
        }
        Ok(())
    }
}
