use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("division by zero in the prime field")]
    DivisionByZero,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(u64),
    #[error("invalid interpolation node {0}")]
    InvalidNode(u64),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimMismatch { expected: usize, actual: usize },
    #[error("vector is not binary")]
    NotBinary,
    #[error("invalid recursion parameters: {0}")]
    BadSpec(String),
    #[error("expected {expected} initial terms, got {actual}")]
    BadInitial { expected: usize, actual: usize },
    #[error("bad recovery window: {0}")]
    BadWindow(String),
    #[error("could not draw {needed} distinct shares of length {bits}")]
    ShareSpaceExhausted { bits: usize, needed: usize },
    #[error("no full-rank {rows}x{cols} matrix after {attempts} attempts; RNG is suspect")]
    RngSuspect {
        rows: usize,
        cols: usize,
        attempts: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("bad shares: {0}")]
    BadShares(String),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("quorum error: {0}")]
    BadQuorum(String),
    #[error("participant indices are not consecutive")]
    NotConsecutive,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u64),
    #[error("share belongs to a different deal")]
    WrongDeal,
}

pub type Result<T> = std::result::Result<T, Error>;
