use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Invalid parameters (field degree, code shape, simulation settings).
    #[error("configuration error: {0}")]
    Config(String),

    /// Arithmetic outside the domain of an operation, e.g. inverting zero.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("construction error: {0}")]
    Construction(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    /// An exhaustive computation was refused because it would visit `count` items.
    #[error("enumeration guard exceeded: {count} items (limit {limit})")]
    GuardExceeded { count: u128, limit: u128 },

    #[error("intrinsic convention {found:?} does not match decoder rule (expected {expected:?})")]
    ConventionMismatch {
        expected: crate::channel::Convention,
        found: crate::channel::Convention,
    },

    /// Messages collapsed to zero or became non-finite.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
