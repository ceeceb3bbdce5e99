use num_bigint::BigUint;
use thiserror::Error;

use crate::rng::ConfigErrors;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(BigUint),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: BigUint, modulus: BigUint },

    #[error("{0} is not an odd prime")]
    InvalidPrime(BigUint),

    #[error("{what} exceeds the supported limit of {limit}")]
    UnsupportedSize { what: String, limit: String },

    #[error("expected base {expected}, got base {found}")]
    WrongBase { expected: u32, found: u32 },

    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),

    #[error("digit indices start at 1")]
    InvalidIndex,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("pattern has value zero; no fraction 0 < a < N represents it")]
    ZeroValue,

    #[error("fraction must satisfy 0 < a < N, got {numerator}/{denominator}")]
    NotProperFraction { numerator: BigUint, denominator: BigUint },

    #[error("base {base} shares a factor with denominator {denominator}; expansion is not purely periodic")]
    NonPurelyPeriodic { base: u32, denominator: BigUint },

    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u64, base: u32 },

    #[error("sequence has no declared period")]
    MissingPeriod,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid generator config: {0}")]
    Config(ConfigErrors),
}
