//! Brute-force ground truth from permutation groups: enumeration, classes,
//! Sylow subgroups, p-group invariants and Burnside-Dixon character tables.

mod dixon;
mod finite;
mod group;
pub(crate) mod modp;
mod perm;
mod sylow;

pub use dixon::{class_matrices, dixon_table, dixon_with, DixonOptions, DixonOutcome};
pub use finite::{FiniteGroup, MAX_CAYLEY};
pub use group::{ConjClass, ConjugacyData, Group, PermGroup, DEFAULT_CAP};
pub use perm::Perm;
pub use sylow::{ground_truth, invariants_of, subgroup_invariants, sylow_elements, sylow_p, GroundTruth};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid permutation data: {0}")]
    InvalidPermutation(String),
    #[error("enumeration exceeded the element cap of {0}")]
    CapExceeded(usize),
    #[error("group is too large for a multiplication table (limit {0})")]
    TooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not a {0}-group")]
    NotPGroup(u64),
    #[error("expected order {expected}, enumerated {actual}")]
    OrderMismatch { expected: u64, actual: u64 },
    #[error("character table computation failed: {0}")]
    Dixon(String),
    #[error("internal oracle error: {0}")]
    Internal(String),
}
