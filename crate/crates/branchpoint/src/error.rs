//! Command-line failures and their exit codes.

use std::fmt;

use branchpoint_core::Error as CoreError;

/// Class of failure, which fixes the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unreadable or malformed files, write failures. Exit code 1.
    Io,
    /// Inputs violating an operation's preconditions. Exit code 2.
    Contract,
    /// A numerical method did not converge. Exit code 3.
    NonConvergence,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Io => 1,
            ErrorKind::Contract => 2,
            ErrorKind::NonConvergence => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn io(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Io, message: message.into() }
    }

    pub fn contract(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Contract, message: message.into() }
    }

    pub fn non_convergence(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::NonConvergence, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    /// Prefix the message with context.
    pub fn context(self, what: impl fmt::Display) -> Self {
        Self { kind: self.kind, message: format!("{what}: {}", self.message) }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let kind = match e {
            CoreError::AllZeroSolution => ErrorKind::NonConvergence,
            _ => ErrorKind::Contract,
        };
        Self { kind, message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::io(format!("JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::io(format!("CSV: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}
