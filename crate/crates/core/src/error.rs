use thiserror::Error;

use crate::fuzzy::FuzzyError;
use crate::lp::LpError;

/// Errors raised by the solvers and checkers above the fuzzy-number layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("point is infeasible: constraint {constraint} exceeds 0 at level {level}")]
    Infeasible { constraint: usize, level: f64 },
    #[error("point lies outside the box in coordinate {0}")]
    OutsideBox(usize),
    #[error("invalid box: lower bound above upper bound in coordinate {0}")]
    InvalidBox(usize),
    #[error("no multiplier certificate exists on this grid")]
    NoCertificate,
    #[error("too many vectors for orthant enumeration: {found} > {max}")]
    TooManyVectors { found: usize, max: usize },
    #[error("stationarity has no solution: {0}")]
    EmptyIntersection(String),
    #[error("bias windows of the support points do not intersect at level 0")]
    EmptyBias,
    #[error("no separating candidate was accepted")]
    NoSeparator,
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Whether the error stems from malformed input rather than from the
    /// mathematics of a well-formed instance.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Fuzzy(_)
            | Error::OutsideBox(_)
            | Error::InvalidBox(_)
            | Error::TooManyVectors { .. }
            | Error::InvalidDataset(_)
            | Error::InvalidArgument(_) => true,
            Error::Lp(e) => !matches!(e, LpError::IterationLimit | LpError::Numerical(_)),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
