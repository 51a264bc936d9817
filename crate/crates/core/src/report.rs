//! Pass/fail bookkeeping shared by every verifier.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// One failed check, rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub k_min: u32,
    pub k_max: u32,
    pub checks: u64,
    pub failures: Vec<Failure>,
    /// Informational lines: documented conventions and deviations.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>, k_min: u32, k_max: u32) -> Self {
        Report {
            suite: suite.into(),
            k_min,
            k_max,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Counts one check and records a failure when `expected != actual`.
    pub fn check_eq<T>(&mut self, location: impl FnOnce() -> String, expected: &T, actual: &T)
    where
        T: PartialEq + fmt::Display + ?Sized,
    {
        self.checks += 1;
        if expected != actual {
            self.failures.push(Failure {
                location: location(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Counts one check with a free-form failure description.
    pub fn check(
        &mut self,
        ok: bool,
        location: impl FnOnce() -> String,
        expected: impl FnOnce() -> String,
        actual: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                location: location(),
                expected: expected(),
                actual: actual(),
            });
        }
    }

    pub fn fail(&mut self, location: String, expected: String, actual: String) {
        self.checks += 1;
        self.failures.push(Failure {
            location,
            expected,
            actual,
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report's checks, failures and notes into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}] suite {} k={}..{} checks={} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.k_min,
            self.k_max,
            self.checks,
            self.failures.len()
        )?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for failure in &self.failures {
            writeln!(
                f,
                "  failure at {}: expected {}, actual {}",
                failure.location, failure.expected, failure.actual
            )?;
        }
        Ok(())
    }
}
