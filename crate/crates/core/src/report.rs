//! Pass/fail reports for exact checks.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), passed: true, checks: 0, failures: Vec::new() }
    }

    /// Records one check; `msg` is only built on failure.
    pub fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(msg());
        }
        ok
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.checks += 1;
        self.passed = false;
        self.failures.push(msg.into());
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checks += other.checks;
        if !other.passed {
            self.passed = false;
            self.failures
                .extend(other.failures.into_iter().map(|f| format!("{}: {}", other.name, f)));
        }
    }

    pub fn summary(&self) -> String {
        if self.passed {
            format!("{}: ok ({} checks)", self.name, self.checks)
        } else {
            format!(
                "{}: FAILED ({} of {} checks): {}",
                self.name,
                self.failures.len(),
                self.checks,
                self.failures.first().map(String::as_str).unwrap_or("")
            )
        }
    }
}
