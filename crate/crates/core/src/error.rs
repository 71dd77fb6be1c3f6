use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant corresponds to one outcome category so that front ends can
/// map errors onto stable exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size bound would be exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested object provably does not exist for these inputs.
    #[error("impossible: {0}")]
    Impossible(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}

macro_rules! invariant {
    ($($arg:tt)*) => { $crate::error::Error::Invariant(format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use invariant;
