//! Independent brute-force oracles and validators.
//!
//! Nothing here calls into [`crate::solvers`] or [`crate::kt`]; a
//! disagreement between an oracle and a solver is always a real failure.

mod axioms;
mod brute;
mod validate;

use std::fmt;

pub use axioms::{verify_matroid_axioms, verify_partition_supermodular, verify_rank_function};
pub use brute::{brute_exists_packing, brute_exists_with, brute_min_augmentation, BRUTE_EDGE_CAP, BRUTE_TOKEN_CAP, BRUTE_VERTEX_CAP};
pub use validate::validate_packing;

/// One failed rule with a printable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub rule: &'static str,
    pub witness: String,
}

/// Outcome of a validator: `ok()` iff no rule failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, rule: &'static str, witness: impl Into<String>) {
        self.failures.push(Failure { rule, witness: witness.into() });
    }

    pub fn has(&self, rule: &str) -> bool {
        self.failures.iter().any(|f| f.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", fail.rule, fail.witness)?;
        }
        Ok(())
    }
}
