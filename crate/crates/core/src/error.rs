use thiserror::Error;

/// Errors raised by graph construction, parsing and the exact searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("graph has {edges} base edges; at most {limit} are supported by edge-set algorithms")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("cycle space has dimension {dimension}, above the cap of {cap}")]
    CycleSpaceTooLarge { dimension: usize, cap: usize },

    #[error("graph has a bridge")]
    Bridge,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(msg: impl Into<String>) -> Error {
    Error::ContractViolation(msg.into())
}
