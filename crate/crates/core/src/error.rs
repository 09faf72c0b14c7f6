use alloc::string::String;
use core::fmt;

/// Errors raised by the exact-arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation
    /// (zero vector, non-positive log argument, negative height, ...).
    Domain(String),
    /// Mismatched block structures, coefficient rings, or degrees.
    Structure(String),
    /// An enumeration or exact computation would exceed the configured
    /// cost cap; the caller should treat the result as undetermined.
    CostCap(String),
    /// A univariate polynomial that must be squarefree is not.
    NotSquarefree,
    /// Reduction of a form modulo p vanished where a nonzero fiber was
    /// required.
    VanishingReduction,
    /// An internal identity that is supposed to hold unconditionally
    /// failed; this signals a bug, not a bad input.
    Invariant(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Structure(msg) => write!(f, "structural error: {msg}"),
            Error::CostCap(msg) => write!(f, "cost cap exceeded: {msg}"),
            Error::NotSquarefree => write!(f, "polynomial is not squarefree"),
            Error::VanishingReduction => write!(f, "form vanishes under reduction"),
            Error::Invariant(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// True for errors that indicate an implementation bug rather than a
    /// rejected input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
