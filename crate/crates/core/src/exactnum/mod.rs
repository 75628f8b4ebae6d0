//! Exact arithmetic: rationals, cyclotomic numbers and finite fields.

mod cyc;
mod ff;
mod poly;
mod reduce;

pub use cyc::{cyc_root, Cyc, MAX_CONDUCTOR};
pub use ff::{FFElem, FieldCtx};
pub use reduce::{ideal_reduce, IdealReducer};

/// Rationals are always stored in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("conductor {0} exceeds the supported maximum of {MAX_CONDUCTOR}")]
    ConductorTooLarge(u64),
    #[error("value is not rational (conductor {0})")]
    NotRational(u32),
    #[error("exponent {j} is not coprime to conductor {n}")]
    NotCoprime { j: i64, n: u32 },
    #[error("value has non-integral coefficients")]
    NonIntegral,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("conductor {conductor} does not divide the reduction ambient {ambient}")]
    AmbientMismatch { conductor: u32, ambient: u32 },
    #[error("division by zero")]
    DivisionByZero,
}
