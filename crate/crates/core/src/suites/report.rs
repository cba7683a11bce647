use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
    pub millis: u128,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), cases: 0, passed: 0, failures: Vec::new(), millis: 0, notes: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }

    pub(crate) fn push_failure(&mut self, f: Failure, cap: usize) {
        if self.failures.len() < cap {
            self.failures.push(f);
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {}: {}/{} cases in {} ms", self.suite, self.passed, self.cases, self.millis)?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        if let Some(first) = self.failures.first() {
            writeln!(f, "  first failure: {}", first.inputs)?;
            writeln!(f, "    lhs: {}", first.lhs)?;
            writeln!(f, "    rhs: {}", first.rhs)?;
        }
        Ok(())
    }
}
