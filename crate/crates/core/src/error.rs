use thiserror::Error;

use crate::enrich::Backend;

#[derive(Debug, Error)]
pub enum Error {
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: Backend, found: Backend },

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("signature error: {0}")]
    SignatureError(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
