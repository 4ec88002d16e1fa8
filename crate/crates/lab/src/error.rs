//! Lab error type; the CLI maps variants onto its exit codes.

use std::fmt;

#[derive(Debug)]
pub enum LabError {
    /// Bad configuration or usage (exit code 1).
    Config(String),
    /// Scheme or rate computation failure (exit code 2).
    Numerical(String),
    Io(std::io::Error),
}

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) | LabError::Io(_) => 1,
            LabError::Numerical(_) => 2,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        LabError::Config(msg.into())
    }
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::Config(msg) => write!(f, "config error: {msg}"),
            LabError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            LabError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<swlab_core::Error> for LabError {
    fn from(e: swlab_core::Error) -> Self {
        LabError::Numerical(e.to_string())
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e)
    }
}
