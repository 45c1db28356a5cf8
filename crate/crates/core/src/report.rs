//! Outcome records for exact identity sweeps.

use alloc::string::String;
use alloc::vec::Vec;

/// One asserted identity, checked element by element over a spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: String,
    /// Number of spanning elements the identity was evaluated on.
    pub checked: usize,
    /// First failing input, if any.
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>) -> Self {
        IdentityCheck { identity: identity.into(), checked: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// Records one evaluation; keeps only the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }
}

/// A list of identity checks. `interrupted` is set when the work budget ran
/// out; the checks present are then only those completed so far.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
    pub interrupted: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.interrupted.is_none() && self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, identity: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}
