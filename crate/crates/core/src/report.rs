use serde::{Deserialize, Serialize};

/// A counterexample recorded by a verifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(inputs: Vec<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Witness {
            inputs,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

/// Outcome of one verification check.
///
/// Reports are deterministic: witnesses appear in sample order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub cases: usize,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            cases: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one case; a failing case keeps its witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.witnesses.push(witness());
        }
    }

    pub fn fail(&mut self, witness: Witness) {
        self.cases += 1;
        self.passed = false;
        self.witnesses.push(witness);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.cases += other.cases;
        self.passed &= other.passed;
        self.witnesses.extend(other.witnesses);
        self.notes.extend(other.notes);
    }
}
