//! Versioned JSON reports and the exit-code mapping.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const REPORT_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// A numerical check that ran to completion and missed its tolerance.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

/// Status string and exit code for a failed run.
pub fn classify_failure(err: &anyhow::Error) -> (&'static str, i32) {
    if err.downcast_ref::<CheckFailed>().is_some() {
        return ("check_failed", EXIT_NUMERICAL);
    }
    match err.downcast_ref::<orbitwave_core::Error>() {
        Some(orbitwave_core::Error::Divergent(_)) => ("divergent", EXIT_NUMERICAL),
        Some(orbitwave_core::Error::TruncationFailure(_)) => ("truncation_failure", EXIT_NUMERICAL),
        Some(orbitwave_core::Error::NotAdmissible(_)) => ("not_admissible", EXIT_NUMERICAL),
        _ => ("invalid", EXIT_INVALID),
    }
}

/// Report under construction. Inputs are echoed up front so that failed runs
/// still say what was asked.
pub struct Report {
    command: String,
    inputs: Value,
    body: Map<String, Value>,
    metrics: Map<String, Value>,
    grids: Map<String, Value>,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self { command: command.into(), inputs, body: Map::new(), metrics: Map::new(), grids: Map::new() }
    }

    /// Top-level result field.
    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.body.insert(key.into(), to_value(value));
    }

    pub fn metric(&mut self, key: &str, value: impl Serialize) {
        self.metrics.insert(key.into(), to_value(value));
    }

    /// A quadrature grid or chart the numbers depend on.
    pub fn grid(&mut self, key: &str, value: impl Serialize) {
        self.grids.insert(key.into(), to_value(value));
    }

    pub fn finish(self, status: &str, error: Option<String>) -> Value {
        let mut out = Map::new();
        out.insert("report_version".into(), json!(REPORT_VERSION));
        out.insert("command".into(), json!(self.command));
        out.insert("status".into(), json!(status));
        out.insert(
            "versions".into(),
            json!({ "orbitwave": env!("CARGO_PKG_VERSION"), "orbitwave-core": orbitwave_core::VERSION }),
        );
        out.insert("inputs".into(), self.inputs);
        if let Some(e) = error {
            out.insert("error".into(), json!(e));
        }
        out.extend(self.body);
        if !self.metrics.is_empty() {
            out.insert("metrics".into(), Value::Object(self.metrics));
        }
        if !self.grids.is_empty() {
            out.insert("grids".into(), Value::Object(self.grids));
        }
        Value::Object(out)
    }
}
