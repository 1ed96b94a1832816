use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check. Serializes to the line-oriented JSON record
/// `{"check", "status", "samples", "witness"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub samples: usize,
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, samples: usize) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            samples,
            witness: None,
        }
    }

    pub fn fail(check: impl Into<String>, samples: usize, witness: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Fail,
            samples,
            witness: Some(witness.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.status, &self.witness) {
            (Status::Pass, _) => write!(f, "PASS {} ({} samples)", self.check, self.samples),
            (Status::Fail, Some(w)) => {
                write!(
                    f,
                    "FAIL {} ({} samples) witness: {w}",
                    self.check, self.samples
                )
            }
            (Status::Fail, None) => write!(f, "FAIL {} ({} samples)", self.check, self.samples),
        }
    }
}
