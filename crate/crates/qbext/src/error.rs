//! Library-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QbError {
    /// Malformed input: bad type strings, non-root arguments, parse errors.
    #[error("usage error: {0}")]
    Usage(String),

    /// A configurable resource guardrail was exceeded (e.g. a slice weight
    /// space above the height cap would have to be enumerated).
    #[error("resource guardrail exceeded: {0}")]
    Guardrail(String),

    /// An internal exactness or consistency assertion failed; indicates a
    /// bug, never bad user input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type QbResult<T> = Result<T, QbError>;
