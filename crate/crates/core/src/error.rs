//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated its documented precondition.
    InvalidArgument(String),
    /// Two points share a coordinate (up to the active threshold) in some
    /// dimension, so the pair energy is undefined there.
    DegenerateSet {
        point_a: usize,
        point_b: usize,
        dim: usize,
    },
    /// A kernel evaluation was requested at (or within the degeneracy
    /// threshold of) the singular arguments 0 or 1.
    DegenerateCoordinate { t: f64 },
    /// The requested exact computation exceeds the operation budget.
    BudgetExceeded {
        required: u128,
        budget: u128,
        hint: &'static str,
    },
    /// Jitter repair could not separate the coordinates within the round
    /// limit.
    UnrepairableSet { rounds: usize },
    /// The embedded Sobol table does not cover the requested dimension.
    UnsupportedDimension { dim: usize, max: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::DegenerateSet {
                point_a,
                point_b,
                dim,
            } => write!(
                f,
                "degenerate set: points {point_a} and {point_b} share coordinate {dim}"
            ),
            Error::DegenerateCoordinate { t } => {
                write!(f, "kernel argument {t:e} is at or too close to a singularity")
            }
            Error::BudgetExceeded {
                required,
                budget,
                hint,
            } => write!(
                f,
                "operation budget exceeded ({required} > {budget}); {hint}"
            ),
            Error::UnrepairableSet { rounds } => {
                write!(f, "could not repair degenerate set within {rounds} jitter rounds")
            }
            Error::UnsupportedDimension { dim, max } => write!(
                f,
                "dimension {dim} exceeds the embedded table (max {max}); import points from CSV instead"
            ),
        }
    }
}

impl core::error::Error for Error {}
