//! Error type shared by every module.

use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structure has the wrong shape (ragged pattern, arity mismatch).
    #[error("structural error: {0}")]
    Structure(String),
    /// A pattern violates betweenness or the SU(n) condition.
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    /// Quantum numbers do not describe a state of the stated irrep.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// A coupling is forbidden by a selection rule.
    #[error("selection rule violated: {0}")]
    SelectionRule(String),
    /// A request falls outside the implemented family.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A polynomial is not homogeneous in some variable group.
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    /// Text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;
