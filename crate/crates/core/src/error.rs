use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("element {value} out of range for a field of size {size}")]
    InvalidElement { value: u64, size: u64 },
    #[error("degree {degree} does not divide {target}")]
    DegreeMismatch { degree: u32, target: u32 },
    #[error("no irreducible polynomial found within the retry bound")]
    NoIrreducible,
    #[error("no field level large enough: {0}")]
    NoLargeLevel(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("surface is singular")]
    Singular,
    #[error("line solver failed: {0}")]
    LineSolver(String),
    #[error("no matching class for signature {0}")]
    NoClass(String),
    #[error("ambiguous class signature {0}")]
    AmbiguousClass(String),
    #[error("inconsistent classification: {0}")]
    Inconsistent(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("retry budget exhausted: {0}")]
    RetriesExhausted(String),
    #[error("characteristic 2 is not supported here")]
    Characteristic2,
}

pub type Result<T> = std::result::Result<T, Error>;
