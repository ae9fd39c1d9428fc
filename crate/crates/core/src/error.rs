//! Crate-wide error type.
//!
//! Variants are grouped by how a caller should react: bad input data,
//! violated mathematical preconditions, or numerical trouble at run time.
//! The CLI maps these groups onto distinct process exit codes.

use alloc::string::String;
use core::fmt;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Unsupported group family / rank combination or malformed spec data.
    InvalidSpec(String),
    /// A documented mathematical precondition does not hold
    /// (zero generator, non-isotropic vector, dependent polynomials, ...).
    Precondition(String),
    /// Two objects from different group specs were combined.
    SpecMismatch(String),
    /// A differential was rank-deficient where full rank was required.
    Singular(String),
    /// An iteration (Newton projection, polar retraction, QR) did not
    /// converge within its budget.
    NonConvergence(String),
    /// Any other numerical failure (non-finite values, failed solve).
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(m) => write!(f, "invalid spec: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::SpecMismatch(m) => write!(f, "spec mismatch: {m}"),
            Error::Singular(m) => write!(f, "singularity: {m}"),
            Error::NonConvergence(m) => write!(f, "no convergence: {m}"),
            Error::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl core::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
