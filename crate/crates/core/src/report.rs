//! Verification reports: named checks with a pass/fail verdict, case counts
//! and a witness for the first failure.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: usize,
    /// Number of those cases that failed.
    pub failures: usize,
    /// Canonical text of the first failing case.
    pub witness: Option<String>,
    /// Per-case observations (sizes, counts) worth printing.
    pub details: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: usize) -> Self {
        Check {
            name: name.into(),
            passed: true,
            cases,
            failures: 0,
            witness: None,
            details: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, cases: usize, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            cases,
            failures: 1,
            witness: Some(witness.into()),
            details: Vec::new(),
        }
    }

    pub fn with_details(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

/// Accumulates cases for one check, keeping the first failure.
#[derive(Debug)]
pub struct Tally {
    name: String,
    cases: usize,
    failures: usize,
    witness: Option<String>,
    details: Vec<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failures: 0,
            witness: None,
            details: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn fail_with(&mut self, witness: String) {
        self.cases += 1;
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn detail(&mut self, line: String) {
        self.details.push(line);
    }

    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    pub fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: self.witness.is_none(),
            cases: self.cases,
            failures: self.failures,
            witness: self.witness,
            details: self.details,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    /// Description of the finite fragment the checks were certified on.
    pub fragment: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>, fragment: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            fragment: fragment.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        writeln!(f, "fragment: {}", self.fragment)?;
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            if c.passed {
                writeln!(f, "[{verdict}] {} ({} cases)", c.name, c.cases)?;
            } else {
                writeln!(f, "[{verdict}] {} ({} of {} cases fail)", c.name, c.failures, c.cases)?;
            }
            for d in &c.details {
                writeln!(f, "    {d}")?;
            }
            if let Some(w) = &c.witness {
                writeln!(f, "    witness: {w}")?;
            }
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
