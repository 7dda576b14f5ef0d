//! CSV for aggregates, JSON for structured reports.

use std::path::Path;

use serde::Serialize;

use super::{RatioEstimate, SuiteReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}; expected csv or json"))),
        }
    }
}

/// Something with a flat table form.
pub trait Tabular: Serialize {
    fn header() -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl Tabular for RatioEstimate {
    fn header() -> Vec<&'static str> {
        vec![
            "matroid", "algorithm", "weights", "mode", "n", "rank", "trials", "seed", "opt",
            "opt_stderr", "alg", "alg_stderr", "ratio", "ratio_stderr", "ratio_infinite",
            "opt_exact", "alg_exact", "bound", "constant", "constant_value", "margin", "tolerance",
            "passed",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mode = match self.mode {
            super::RunMode::Exact => "exact",
            super::RunMode::MonteCarlo => "mc",
        };
        let b = self.bound.as_ref();
        vec![vec![
            self.matroid.clone(),
            self.algorithm.clone(),
            self.weights.clone(),
            mode.into(),
            self.n.to_string(),
            self.rank.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            self.opt.to_string(),
            self.opt_stderr.to_string(),
            self.alg.to_string(),
            self.alg_stderr.to_string(),
            opt(&self.ratio),
            opt(&self.ratio_stderr),
            self.ratio_infinite.to_string(),
            opt(&self.opt_exact),
            opt(&self.alg_exact),
            opt(&b.map(|b| b.statement.clone())),
            opt(&b.map(|b| b.constant.name.clone())),
            opt(&b.map(|b| b.constant.approx)),
            opt(&b.map(|b| b.margin)),
            opt(&b.map(|b| b.tolerance)),
            opt(&b.map(|b| b.passed)),
        ]]
    }
}

impl Tabular for SuiteReport {
    fn header() -> Vec<&'static str> {
        vec!["suite", "instance", "check", "constant", "constant_value", "measured", "bound", "margin", "passed"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    self.suite.clone(),
                    c.instance.clone(),
                    c.check.clone(),
                    opt(&c.constant.as_ref().map(|k| k.name.clone())),
                    opt(&c.constant.as_ref().map(|k| k.approx)),
                    c.measured.clone(),
                    c.bound.clone(),
                    opt(&c.margin),
                    c.passed.to_string(),
                ]
            })
            .collect()
    }
}

/// Serializes a report in `format`.
pub fn render<T: Tabular>(report: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| Error::Internal(e.to_string())),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Internal(e.to_string());
            w.write_record(T::header()).map_err(io)?;
            for row in report.rows() {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
        }
    }
}

/// Writes to `path`, or standard output when `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
