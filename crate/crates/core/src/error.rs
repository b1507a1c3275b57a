//! Error taxonomy shared by every module of the crate.

use thiserror::Error;

/// Errors raised by sieve construction, arithmetic queries, series algebra,
/// zeta-function evaluation, and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A requested table size is zero or beyond the supported ceiling.
    #[error("size limit: {0}")]
    SizeLimit(String),

    /// An argument lies outside the tabulated or representable range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A residue violates its modulus constraint (for example `a >= q`).
    #[error("normalization: {0}")]
    Normalization(String),

    /// Two coefficient series have incompatible lengths.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// The argument lies outside the analytic domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// Evaluation was requested exactly at a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// A Stieltjes order beyond the supported maximum was requested.
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),

    /// The call violates a usage contract (empty grids, bad routing, ...).
    #[error("usage: {0}")]
    Usage(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
