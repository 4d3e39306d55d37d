use thiserror::Error;

/// Errors raised by the workbench. Verdicts (exact / not exact, split / not
/// split) are never errors; these cover invalid input, resource caps and
/// internal inconsistencies.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("operation requires an extension-pair field")]
    NotExtension,

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("illegal diagram for flavor {flavor}: {reason}")]
    IllegalDiagram { flavor: String, reason: String },

    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("morphism is not idempotent")]
    NotIdempotent,

    #[error("morphism does not lie in the hom space: {0}")]
    NotInHomSpace(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("witness verification failed: {0}")]
    WitnessFailed(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
