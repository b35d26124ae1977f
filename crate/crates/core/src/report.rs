//! Named pass/fail checks with optional witnesses.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckList {
    checks: Vec<Check>,
}

impl CheckList {
    pub fn new() -> Self {
        CheckList::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        });
    }

    /// Records a check that passes when `failure` is `None`.
    pub fn record(&mut self, name: impl Into<String>, failure: Option<String>) {
        match failure {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn extend(&mut self, other: CheckList) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check followed by a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match (&c.pass, &c.witness) {
                (true, _) => writeln!(out, "PASS  {}", c.name),
                (false, Some(w)) => writeln!(out, "FAIL  {}: {w}", c.name),
                (false, None) => writeln!(out, "FAIL  {}", c.name),
            }
            .unwrap();
        }
        let failed = self.failures().count();
        if failed == 0 {
            writeln!(out, "all checks passed ({} checks)", self.len()).unwrap();
        } else {
            writeln!(out, "{failed} of {} checks failed", self.len()).unwrap();
        }
        out
    }
}
