use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Value,
}

/// Machine-readable record of one invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: BTreeMap<String, f64>,
    pub verdict: Verdict,
}

/// A report, its human rendering and the process exit code.
pub struct Outcome {
    pub report: Report,
    pub human: String,
    pub exit: u8,
}

impl Outcome {
    pub fn new(report: Report, human: String) -> Self {
        let exit = if report.verdict == Verdict::Fail { 1 } else { 0 };
        Self { report, human, exit }
    }

    pub fn with_exit(mut self, code: u8) -> Self {
        self.exit = code;
        self
    }
}

pub fn residual_lines(residuals: &BTreeMap<String, f64>) -> String {
    residuals.iter().map(|(k, v)| format!("  {k}: {v:e}\n")).collect()
}
