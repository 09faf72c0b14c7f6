//! Scan harness and file formats on top of `chowbez-core`.
//!
//! This crate carries everything that needs the standard library: the
//! parallel prime scan, instance fixtures, JSON/CSV serialization, and
//! the `chowbez` command-line interface.

pub mod cli;
pub mod formats;
pub mod harness;
pub mod instance;
pub mod selftest;

use std::fmt;

/// Errors surfaced by the harness layer, tagged for exit-code mapping.
#[derive(Debug)]
pub enum HarnessError {
    /// Propagated kernel error.
    Core(chowbez_core::Error),
    /// Hypothesis check failed to certify and no override was given.
    Hypothesis(harness::HypothesisReport),
    /// Malformed user input (files, parameters).
    Input(String),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Core(e) => write!(f, "{e}"),
            HarnessError::Hypothesis(report) => write!(
                f,
                "could not certify the indecomposability hypothesis up to {}; \
                 rerun with a larger limit or --force to scan anyway",
                report.searched_limit
            ),
            HarnessError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<chowbez_core::Error> for HarnessError {
    fn from(e: chowbez_core::Error) -> Self {
        HarnessError::Core(e)
    }
}

impl HarnessError {
    /// Process exit code: 1 hypothesis/incomplete, 2 input, 3 invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(e) if e.is_invariant_violation() => 3,
            HarnessError::Core(_) => 2,
            HarnessError::Hypothesis(_) => 1,
            HarnessError::Input(_) => 2,
        }
    }
}

pub type HResult<T> = Result<T, HarnessError>;
