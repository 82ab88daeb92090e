use thiserror::Error;

use crate::incidence::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a bijection: {0}")]
    NotABijection(String),

    #[error("cannot parse permutation {input:?}: {reason}")]
    PermParse { input: String, reason: String },

    #[error("malformed phi sequence: {0}")]
    MalformedPhi(String),

    #[error("cycle-type mismatch at level {level}")]
    CycleTypeMismatch { level: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(ValidationReport),

    #[error("axis is not defined on the pairs of I_{n}: {reason}")]
    LabelMismatch { n: usize, reason: String },

    #[error("skew acts on pairs of I_{skew}, expected I_{expected}")]
    Arity { expected: usize, skew: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
