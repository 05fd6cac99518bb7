//! Error type shared by all toolkit operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("enumeration cap {cap} exceeded while {context}")]
    CapExceeded { cap: usize, context: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("subgroup is not a Sylow {prime}-subgroup (order {actual}, expected {expected})")]
    SylowMismatch {
        prime: u64,
        actual: u64,
        expected: u64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("subgroup of order {0} is not a p-group")]
    NotPGroup(u64),

    #[error("no subgroup satisfying all certificate conditions was found")]
    NotFound,

    #[error("claim failed: {claim} (expected {expected}, got {actual})")]
    ClaimFailed {
        claim: String,
        expected: String,
        actual: String,
    },

    #[error("internal cross-check failed: {0}")]
    SelfCheckFailed(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
