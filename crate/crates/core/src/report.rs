//! Report documents shared by the CLI and the acceptance suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub paper_anchor: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &str, status: Status, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            paper_anchor: anchor.to_string(),
            status,
            details: details.into(),
        }
    }

    pub fn bool(name: impl Into<String>, anchor: &str, ok: bool, details: impl Into<String>) -> Self {
        Self::new(name, anchor, Status::from_bool(ok), details)
    }

    pub fn error(name: impl Into<String>, anchor: &str, err: impl std::fmt::Display) -> Self {
        Self::new(name, anchor, Status::Error, err.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportDocument {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn passed(&self) -> bool {
        let s = self.summary();
        s.fail == 0 && s.error == 0
    }

    pub fn to_value(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "params": self.params,
            "checks": self.checks,
            "summary": self.summary(),
        })
    }

    /// Sorted keys (serde_json maps are ordered), newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report values are serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "{} {} [{}] {}", c.status.label(), c.name, c.paper_anchor, c.details);
        }
        let s = self.summary();
        let _ = writeln!(out, "pass {} fail {} error {}", s.pass, s.fail, s.error);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_summary() {
        let r = ReportDocument::new("verify nothing");
        assert!(r.passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["summary"], serde_json::json!({"pass": 0, "fail": 0, "error": 0}));
        assert!(r.to_json().ends_with("}\n"));
    }

    #[test]
    fn keys_sorted_and_counts_match() {
        let mut r = ReportDocument::new("x").param("zeta", 1).param("alpha", "a");
        r.push(Check::bool("one", "a", true, ""));
        r.push(Check::bool("two", "a", false, "bad"));
        r.push(Check::error("three", "a", "boom"));
        let json = r.to_json();
        let pos = |k: &str| json.find(k).unwrap();
        assert!(pos("\"checks\"") < pos("\"command\"") && pos("\"command\"") < pos("\"params\""));
        assert!(pos("\"alpha\"") < pos("\"zeta\""));
        assert!(pos("\"details\"") < pos("\"name\"") && pos("\"paper_anchor\"") < pos("\"status\""));
        assert_eq!(r.summary(), Summary { pass: 1, fail: 1, error: 1 });
        assert!(!r.passed());
        assert!(r.to_text().contains("FAIL two [a] bad"));
    }
}
