use std::fmt;

use serde::Serialize;

/// A failed axiom: which numbered condition of a checker broke, and the
/// tuple of elements that breaks it.
///
/// The condition numbering is documented on each checker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub law: &'static str,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(condition: u8, law: &'static str, witness: impl Into<Vec<usize>>) -> Self {
        Violation { condition, law, witness: witness.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} ({}) fails at {:?}", self.condition, self.law, self.witness)
    }
}

pub type Check = Result<(), Violation>;
