//! Executing a scenario and writing its artifacts.

use std::time::Instant;

use conekit_core::CheckReport;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliResult;
use crate::output::write_atomic;
use crate::scenario::{Kind, Scenario};
use crate::scenarios;

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: bool,
    pub max_violation: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckSummary {
    pub fn from_report(report: &CheckReport) -> Self {
        let detail = report
            .first_failure()
            .map(|r| format!("first failure: {}", r.inputs))
            .unwrap_or_default();
        Self {
            name: report.name.clone(),
            passed: report.passed(),
            max_violation: report.max_violation(),
            tol: report.tol,
            detail,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            max_violation: if passed { 0.0 } else { f64::INFINITY },
            tol: 0.0,
            detail: detail.into(),
        }
    }

    pub fn measured(name: impl Into<String>, value: f64, tol: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: value <= tol,
            max_violation: value,
            tol,
            detail: detail.into(),
        }
    }
}

/// What a scenario produced before anything is written.
#[derive(Debug, Default)]
pub struct ScenarioResult {
    pub checks: Vec<CheckSummary>,
    pub csv: Vec<(String, String)>,
    pub details: serde_json::Map<String, Value>,
}

impl ScenarioResult {
    /// Records a report as a check and as `<file>`.
    pub fn report(&mut self, file: &str, report: &CheckReport) {
        self.checks.push(CheckSummary::from_report(report));
        self.csv.push((file.to_string(), report.to_csv()));
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scenario: Kind,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    pub details: serde_json::Map<String, Value>,
    pub outputs: Vec<String>,
    pub runtime_ms: f64,
}

impl Summary {
    /// 0 if every check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

/// Runs the scenario and writes `summary.json` plus its CSV files under
/// `<output>/<kind>/`.
pub fn run(scenario: &Scenario) -> CliResult<Summary> {
    scenario.validate()?;
    let start = Instant::now();
    let result = scenarios::execute(scenario)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;

    let dir = scenario.output_dir();
    let mut outputs = Vec::new();
    for (name, contents) in &result.csv {
        write_atomic(&dir.join(name), contents.as_bytes())?;
        outputs.push(name.clone());
    }
    let summary = Summary {
        scenario: scenario.kind,
        seed: scenario.seed,
        passed: !result.checks.is_empty() && result.checks.iter().all(|c| c.passed),
        checks: result.checks,
        details: result.details,
        outputs,
        runtime_ms,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write_atomic(&dir.join("summary.json"), json.as_bytes())?;
    Ok(summary)
}
