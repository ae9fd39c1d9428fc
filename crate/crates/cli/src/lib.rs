//! Command-line front end for the verification laboratory: named
//! experiments, flat-file configuration, JSON report envelopes, CSV/PLY
//! export, and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod io;
pub mod par;
pub mod report;

/// Process exit codes, one per failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    /// All checks passed.
    Pass = 0,
    /// The run completed but at least one check failed.
    CheckFail = 1,
    /// Bad configuration or a violated mathematical precondition,
    /// detected while setting the experiment up.
    Config = 2,
    /// A numerical failure at run time (non-convergence, singularity).
    Numerical = 3,
}

/// An error carrying its exit class.
#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError {
            code: ExitCode::Config,
            message: msg.into(),
        }
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError {
            code: ExitCode::Numerical,
            message: msg.into(),
        }
    }

    /// Map a core error raised during experiment setup: everything is a
    /// configuration/precondition problem at that stage.
    pub fn setup(err: lie_eigenlab_core::Error) -> Self {
        CliError::config(err.to_string())
    }

    /// Map a core error raised while the experiment is running.
    pub fn runtime(err: lie_eigenlab_core::Error) -> Self {
        use lie_eigenlab_core::Error as E;
        match err {
            E::InvalidSpec(_) | E::Precondition(_) | E::SpecMismatch(_) => {
                CliError::config(err.to_string())
            }
            E::Singular(_) | E::NonConvergence(_) | E::Numerical(_) => {
                CliError::numerical(err.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
