//! Sample-level verification reports.

use std::fmt::Write as _;

use serde::Serialize;

/// One evaluated sample: a description of the inputs, both sides of the
/// identity under test, and the measured violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRow {
    pub inputs: String,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub violation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub tol: f64,
    pub rows: Vec<SampleRow>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, tol: f64) -> Self {
        Self {
            name: name.into(),
            tol,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, inputs: impl Into<String>, lhs: Vec<f64>, rhs: Vec<f64>, violation: f64) {
        self.rows.push(SampleRow {
            inputs: inputs.into(),
            lhs,
            rhs,
            violation,
        });
    }

    /// Largest violation; `+inf` if any sample produced NaN.
    pub fn max_violation(&self) -> f64 {
        self.rows.iter().fold(0.0, |acc, r| {
            if r.violation.is_nan() {
                f64::INFINITY
            } else {
                acc.max(r.violation)
            }
        })
    }

    /// True iff there is at least one sample and none exceeds `tol`.
    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.max_violation() <= self.tol
    }

    /// The first sample whose violation exceeds `tol`.
    pub fn first_failure(&self) -> Option<&SampleRow> {
        self.rows
            .iter()
            .find(|r| r.violation.is_nan() || r.violation > self.tol)
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.rows.extend(other.rows);
    }

    /// CSV with columns `sample,inputs,lhs,rhs,violation`; vector sides are
    /// `;`-joined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample,inputs,lhs,rhs,violation\n");
        for (i, r) in self.rows.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},\"{}\",{},{},{}",
                i,
                r.inputs.replace('"', "'"),
                join(&r.lhs),
                join(&r.rhs),
                r.violation
            );
        }
        out
    }
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}
