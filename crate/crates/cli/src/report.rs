//! The machine-readable report: `{"command", "inputs", "result", "checks"}`.
//! Exact numbers travel as strings.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use modcurve::verify::Check;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOut {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub got: String,
}

impl From<Check> for CheckOut {
    fn from(c: Check) -> Self {
        CheckOut { name: c.name, pass: c.pass, expected: c.expected, got: c.got }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: BTreeMap<String, Value>,
    pub checks: Vec<CheckOut>,
}

/// An exact number or other scalar, as a JSON string.
pub fn s(v: impl Display) -> Value {
    Value::String(v.to_string())
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), inputs: BTreeMap::new(), result: BTreeMap::new(), checks: Vec::new() }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.result.insert(key.into(), v.into());
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c.into());
    }

    pub fn first_failure(&self) -> Option<&CheckOut> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// A report together with its human-readable rendering.
pub struct Output {
    pub report: Report,
    pub text: Vec<String>,
    /// Leave per-check lines out of the text rendering.
    pub brief: bool,
}

impl Output {
    pub fn new(report: Report) -> Self {
        Output { report, text: Vec::new(), brief: false }
    }

    pub fn line(&mut self, l: impl Into<String>) {
        self.text.push(l.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.join("\n");
        if self.brief {
            return out;
        }
        for c in &self.report.checks {
            out.push('\n');
            let mark = if c.pass { "pass" } else { "FAIL" };
            if c.pass {
                out.push_str(&format!("[{mark}] {}: {}", c.name, c.got));
            } else {
                out.push_str(&format!("[{mark}] {}: expected {}, got {}", c.name, c.expected, c.got));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("genus").input("q", s(8));
        r.set("g", s(5));
        r.set("orbits", Value::Array(vec![s("1/0"), Value::Null]));
        r.check(Check::new("g", 5, 5));
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"g\":\"5\""));
    }
}
