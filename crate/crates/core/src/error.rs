use thiserror::Error;

/// Errors raised by ring constructions, predicates and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("shape mismatch: {claim} expects {expected}")]
    Shape { claim: String, expected: &'static str },
    #[error("query error: {0}")]
    Query(String),
    #[error("inconsistent knowledge base: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
