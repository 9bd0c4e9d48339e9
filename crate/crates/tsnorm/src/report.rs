//! Experiment reports and their table/CSV/JSON renderings.
//!
//! The CSV column set is fixed (`experiment,cell,param_json,value,target,
//! tol,pass,seconds`) so downstream plotting never has to sniff headers,
//! and values are written exactly as the engines print them — rationals
//! as `num/den`, floats with 12 significant digits — so a re-parsed
//! report reproduces the original texts verbatim.

use std::io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// One measurement: a value checked against a target.  `target` is
/// either a plain value (pass iff `|value - target| <= tol`) or an
/// inequality written `<=x` / `>=x` (pass iff the bound holds with `tol`
/// slack) — bounds are first-class because several of the verified
/// statements are one-sided.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub param_json: String,
    pub value: String,
    pub target: String,
    pub tol: f64,
    pub pass: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub cells: Vec<Cell>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            cells: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), ReportError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "experiment",
            "cell",
            "param_json",
            "value",
            "target",
            "tol",
            "pass",
            "seconds",
        ])?;
        for cell in &self.cells {
            w.write_record([
                self.experiment.as_str(),
                cell.id.as_str(),
                cell.param_json.as_str(),
                cell.value.as_str(),
                cell.target.as_str(),
                &format!("{}", cell.tol),
                if cell.pass { "true" } else { "false" },
                &format!("{}", cell.seconds),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<ExperimentReport>, ReportError> {
        let mut reader = csv::Reader::from_reader(input);
        let mut reports: Vec<ExperimentReport> = Vec::new();
        for record in reader.records() {
            let record = record?;
            let experiment = record.get(0).unwrap_or_default().to_string();
            let cell = Cell {
                id: record.get(1).unwrap_or_default().to_string(),
                param_json: record.get(2).unwrap_or_default().to_string(),
                value: record.get(3).unwrap_or_default().to_string(),
                target: record.get(4).unwrap_or_default().to_string(),
                tol: record.get(5).unwrap_or_default().parse().unwrap_or(0.0),
                pass: record.get(6) == Some("true"),
                seconds: record.get(7).unwrap_or_default().parse().unwrap_or(0.0),
            };
            match reports.last_mut() {
                Some(r) if r.experiment == experiment => r.cells.push(cell),
                _ => reports.push(ExperimentReport {
                    experiment,
                    cells: vec![cell],
                }),
            }
        }
        Ok(reports)
    }

    pub fn write_json<W: io::Write>(&self, out: W) -> Result<(), ReportError> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    /// Human-readable table plus a one-line summary.
    pub fn write_table<W: io::Write>(&self, mut out: W) -> Result<(), ReportError> {
        let id_w = self
            .cells
            .iter()
            .map(|c| c.id.len())
            .chain(["cell".len()])
            .max()
            .unwrap_or(4);
        let val_w = self
            .cells
            .iter()
            .map(|c| c.value.len())
            .chain(["value".len()])
            .max()
            .unwrap_or(5);
        let tgt_w = self
            .cells
            .iter()
            .map(|c| c.target.len())
            .chain(["target".len()])
            .max()
            .unwrap_or(6);
        writeln!(out, "experiment: {}", self.experiment)?;
        writeln!(
            out,
            "{:id_w$}  {:>val_w$}  {:>tgt_w$}  {:>9}  {:>4}  {:>8}",
            "cell", "value", "target", "tol", "ok", "seconds"
        )?;
        for c in &self.cells {
            writeln!(
                out,
                "{:id_w$}  {:>val_w$}  {:>tgt_w$}  {:>9.1e}  {:>4}  {:>8.3}",
                c.id,
                c.value,
                c.target,
                c.tol,
                if c.pass { "ok" } else { "FAIL" },
                c.seconds
            )?;
        }
        let failed = self.cells.iter().filter(|c| !c.pass).count();
        writeln!(
            out,
            "{} cells, {} passed, {} failed",
            self.cells.len(),
            self.cells.len() - failed,
            failed
        )?;
        Ok(())
    }
}

/// Checks a value against a `Cell` target string: `<=x`, `>=x`, or a
/// plain number compared within `tol`.  Exact values (`num/den`) should
/// be compared as strings by the caller instead.
pub fn target_satisfied(value: f64, target: &str, tol: f64) -> bool {
    if let Some(bound) = target.strip_prefix("<=") {
        bound
            .trim()
            .parse::<f64>()
            .map(|b| value <= b + tol)
            .unwrap_or(false)
    } else if let Some(bound) = target.strip_prefix(">=") {
        bound
            .trim()
            .parse::<f64>()
            .map(|b| value >= b - tol)
            .unwrap_or(false)
    } else {
        target
            .trim()
            .parse::<f64>()
            .map(|t| (value - t).abs() <= tol)
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        ExperimentReport {
            experiment: "sample".into(),
            cells: vec![
                Cell {
                    id: "n=4".into(),
                    param_json: r#"{"n":4}"#.into(),
                    value: "1".into(),
                    target: "1".into(),
                    tol: 1e-9,
                    pass: true,
                    seconds: 0.01,
                },
                Cell {
                    id: "n=5".into(),
                    param_json: r#"{"n":5}"#.into(),
                    value: "1.11803398875".into(),
                    target: "<=2".into(),
                    tol: 1e-9,
                    pass: true,
                    seconds: 0.02,
                },
            ],
        }
    }

    #[test]
    fn csv_round_trip() {
        let report = sample();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let back = ExperimentReport::read_csv(&buf[..]).unwrap();
        assert_eq!(back, vec![report]);
    }

    #[test]
    fn target_forms() {
        assert!(target_satisfied(1.5, "1.5", 1e-9));
        assert!(target_satisfied(1.2, "<=1.5", 0.0));
        assert!(!target_satisfied(1.6, "<=1.5", 1e-9));
        assert!(target_satisfied(1.6, ">=1.5", 0.0));
        assert!(!target_satisfied(1.4, ">=1.5", 1e-9));
    }

    #[test]
    fn table_marks_failures() {
        let mut report = sample();
        report.cells[0].pass = false;
        let mut buf = Vec::new();
        report.write_table(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("FAIL"));
        assert!(text.contains("1 failed"));
        assert!(!report.all_pass());
    }
}
