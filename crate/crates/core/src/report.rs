//! Verification reports and their text/JSON rendering.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub label: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl CheckEntry {
    pub fn pass(id: &str, label: impl Into<String>) -> Self {
        Self { id: id.to_string(), label: label.into(), status: Status::Pass, lhs: None, rhs: None }
    }

    /// A failing entry always carries both sides.
    pub fn fail(id: &str, label: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Self {
            id: id.to_string(),
            label: label.into(),
            status: Status::Fail,
            lhs: Some(lhs.into()),
            rhs: Some(rhs.into()),
        }
    }

    /// Pass or fail depending on `ok`.
    pub fn compare(id: &str, label: impl Into<String>, ok: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(id, label)
        } else {
            Self::fail(id, label, lhs(), rhs())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub bound: u32,
    pub checks: Vec<CheckEntry>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: &str, bound: u32, checks: Vec<CheckEntry>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Self { suite: suite.to_string(), bound, checks, passed, failed }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(out, "{status} {} {}", c.id, c.label);
            if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                let _ = writeln!(out, "    lhs: {l}");
                let _ = writeln!(out, "    rhs: {r}");
            }
        }
        let _ = writeln!(
            out,
            "suite {} bound {}: {} passed, {} failed",
            self.suite, self.bound, self.passed, self.failed
        );
        out
    }
}
