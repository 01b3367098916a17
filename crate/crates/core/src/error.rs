//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the library.
///
/// The two `Internal*` variants flag violations of identities that are
/// supposed to hold unconditionally; they exist so that cross-checks fail
/// loudly instead of silently producing wrong reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplicative order undefined: gcd({n}, {modulus}) > 1")]
    OrderUndefined { n: u64, modulus: u64 },

    #[error("coprimality required: gcd({n}, {level}) > 1")]
    CoprimalityRequired { n: u64, level: u64 },

    #[error("node {node} is not a root")]
    NotARoot { node: u64 },

    #[error("{terms} terms are not enough to pin a recurrence of order {order}")]
    InsufficientTerms { terms: usize, order: usize },

    #[error("function does not lie in R(L, kappa): {0}")]
    NotInRLKappa(String),

    #[error("denominator vanishes at the origin")]
    PoleAtOrigin,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal formula violation: {0}")]
    InternalFormulaViolation(String),

    #[error("internal theorem violation: {0}")]
    InternalTheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
