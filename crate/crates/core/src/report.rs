use serde::{Deserialize, Serialize};

use crate::qlinalg::{format_q, Q};

/// A single failing identity instance: which identity, at which basis tuple,
/// with what residual.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub identity: String,
    pub at: Vec<usize>,
    pub residual: String,
}

/// Outcome of a basis-exhaustive identity check. Empty means the identity
/// holds exactly.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, identity: &str, at: &[usize], residual: &[Q]) {
        self.violations.push(Violation {
            identity: identity.to_string(),
            at: at.to_vec(),
            residual: format_vec(residual),
        });
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
    }
}

pub fn format_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(format_q).collect();
    format!("({})", parts.join(", "))
}
