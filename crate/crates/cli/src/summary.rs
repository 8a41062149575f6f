//! Structured run summaries (JSON). Summaries are deterministic artifacts:
//! identical config + seed produce byte-identical files, so wall-clock
//! timing is printed to stdout and never written here.

use planeflow_core::pressure::BoundReport;
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub quantity: String,
    pub sup: f64,
    pub inf: f64,
    pub bound: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub time: f64,
    pub excluded_nodes: usize,
}

impl From<&BoundReport> for ReportJson {
    fn from(r: &BoundReport) -> Self {
        ReportJson {
            quantity: r.quantity.clone(),
            sup: r.sup,
            inf: r.inf,
            bound: r.bound,
            margin: r.margin,
            tolerance: r.tolerance,
            pass: r.pass,
            time: r.time,
            excluded_nodes: r.excluded_nodes,
        }
    }
}

pub fn write_json<T: Serialize>(path: &str, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("summary serialization: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Input(format!("cannot write summary {path}: {e}")))?;
    Ok(())
}
