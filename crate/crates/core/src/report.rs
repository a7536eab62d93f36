//! Verification reports: check counters, violation records, and free-form
//! observations shared by every `verify` suite.

use std::fmt;
use std::str::FromStr;

/// How large a sweep a suite runs. Quick scales finish in seconds and are
/// meant for CI; full scales run the complete acceptance grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    pub fn name(self) -> &'static str {
        match self {
            Scale::Quick => "quick",
            Scale::Full => "full",
        }
    }

    /// Pick the quick or full variant of a sweep limit.
    pub fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Scale::Quick),
            "full" => Ok(Scale::Full),
            other => Err(format!("unknown scale '{other}' (expected quick or full)")),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Violation messages kept verbatim per report; the rest are only counted.
const MAX_RECORDED: usize = 25;

/// Outcome of one verification sweep.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub violation_count: u64,
    /// First few violations, formatted for humans.
    pub violations: Vec<String>,
    /// Non-failing observations: attained maxima, wrap-count windows, etc.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            checks: 0,
            violation_count: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Count one assertion; record the detail message if it failed.
    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_RECORDED {
                self.violations.push(detail());
            }
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Fold a sub-report (e.g. one shard of a parallel sweep) into this one.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < MAX_RECORDED {
                self.violations.push(v);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "suite={} checks={} violations={} status={}",
            self.suite,
            self.checks,
            self.violation_count,
            if self.passed() { "ok" } else { "FAIL" }
        )
    }
}
