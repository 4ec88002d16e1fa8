//! Error type shared by the numerical kernels.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Water depth at or below the dry-state floor; this crate does not
    /// regularize dry states.
    NonPositiveDepth {
        h: f64,
        context: &'static str,
        index: Option<usize>,
    },
    /// Mesh construction rejected (empty interval or too few cells).
    DegenerateDomain { a: f64, b: f64, cells: usize },
    /// Index outside the admissible range of the operation.
    IndexOutOfRange { index: usize, max: usize },
    /// Adaptive time stepping on a field with zero wave speed; a fixed step
    /// policy is required for stationary data.
    StationaryField,
    /// Requested step exceeds the stability bound of the active scheme.
    CflViolation { dt: f64, limit: f64 },
    MismatchedLengths { expected: usize, got: usize },
    InvalidParameter(String),
    /// A scheme failure stamped with the simulation time it occurred at.
    AtTime { t: f64, inner: Box<Error> },
}

impl Error {
    pub(crate) fn at_time(self, t: f64) -> Error {
        Error::AtTime {
            t,
            inner: Box::new(self),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveDepth { h, context, index } => match index {
                Some(i) => write!(f, "non-positive depth h = {h:e} in {context} at index {i}"),
                None => write!(f, "non-positive depth h = {h:e} in {context}"),
            },
            Error::DegenerateDomain { a, b, cells } => {
                write!(f, "degenerate domain [{a}, {b}] with {cells} cells")
            }
            Error::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range 0..={max}")
            }
            Error::StationaryField => {
                write!(f, "zero wave speed: stationary field needs a fixed time step")
            }
            Error::CflViolation { dt, limit } => {
                write!(f, "time step {dt:e} exceeds stability limit {limit:e}")
            }
            Error::MismatchedLengths { expected, got } => {
                write!(f, "mismatched sequence lengths: expected {expected}, got {got}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::AtTime { t, inner } => write!(f, "at t = {t}: {inner}"),
        }
    }
}

impl core::error::Error for Error {}
