//! Deterministic pass/fail reports shared by all verification suites.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified identity or value: `status = pass` iff `expected == actual`
/// exactly (both are rendered as exact strings before comparison).
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    pub fn push(
        &mut self,
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let status = if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        };
        match status {
            Status::Pass => self.passed += 1,
            Status::Fail => self.failed += 1,
        }
        self.checks.push(CheckRecord {
            id: id.into(),
            inputs: inputs.into(),
            expected,
            actual,
            status,
        });
    }

    /// Record a boolean check whose expected value is `true`.
    pub fn push_bool(&mut self, id: impl Into<String>, inputs: impl Into<String>, ok: bool) {
        self.push(id, inputs, true, ok);
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Only the failing records (handy for mismatch-style reports).
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn merge(&mut self, other: Report) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.checks.extend(other.checks);
    }

    /// CSV rendering: one line per record, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,id,inputs,expected,actual,status\n");
        for c in &self.checks {
            let esc = |s: &str| {
                if s.contains(',') || s.contains('"') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.to_string()
                }
            };
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                esc(&self.suite),
                esc(&c.id),
                esc(&c.inputs),
                esc(&c.expected),
                esc(&c.actual),
                match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                }
            ));
        }
        out
    }
}
