use thiserror::Error;

/// Errors raised by the verification kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not a p-adic integer at p = {p}")]
    NotPAdicIntegral { value: String, p: u64 },
    #[error("no inverse of {value} modulo {modulus}")]
    InverseMissing { value: String, modulus: u64 },
    #[error("exponent {0} is outside the supported range 1..=4")]
    ExponentOutOfRange(u32),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("zero Pochhammer factor in a denominator at n = {n}, k = {k}")]
    DivisionByZeroTerm { n: u64, k: u64 },
    #[error("truncation {m} must be below p = {p}")]
    TruncationTooLarge { m: u64, p: u64 },
    #[error("residue condition violated: {0}")]
    ResidueConditionViolated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("statement is vacuous: {0}")]
    Skipped(String),
    #[error("zero modulus polynomial")]
    ZeroModulus,
    #[error("non-exact polynomial division")]
    InternalNonExactDivision,
    #[error("empty range [{lo}, {hi}]")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("invalid rational literal {0:?}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
