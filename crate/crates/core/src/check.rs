//! Outcome of a single verification, shared by all modules and the reports.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub id: String,
    pub passed: bool,
    /// Short description of the evidence: the failing degree and coefficient, or what was compared.
    pub witness: String,
}

impl CheckOutcome {
    pub fn new(id: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        CheckOutcome { id: id.into(), passed, witness: witness.into() }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({})", self.id, self.witness)
    }
}
