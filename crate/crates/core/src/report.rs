use std::fmt;

use serde::Serialize;

/// Outcome of one exhaustively checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// First failing instance, rendered for humans.
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn pass(name: impl Into<String>) -> Self {
        AxiomCheck {
            name: name.into(),
            passed: true,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        AxiomCheck {
            name: name.into(),
            passed: false,
            counterexample: Some(witness.into()),
        }
    }

    /// Passes unless `first_failure` is `Some`.
    pub fn from_search(name: impl Into<String>, first_failure: Option<String>) -> Self {
        match first_failure {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn push(&mut self, check: AxiomCheck) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "  [pass] {}", c.name)?,
                Some(w) => writeln!(f, "  [FAIL] {}: {w}", c.name)?,
            }
        }
        Ok(())
    }
}
