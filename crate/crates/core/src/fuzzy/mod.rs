//! Level-cut representation of fuzzy numbers: arithmetic, distance, orders
//! and the generalized Hukuhara difference.

mod family;
mod grid;
mod interval;
mod number;
mod order;
mod vector;

use thiserror::Error;

pub use family::{evaluation_levels, CutFamily, Cuts};
pub use grid::{LevelGrid, DEFAULT_GRID_LEVELS, LEVEL_EPS};
pub use interval::Interval;
pub use number::{FuzzyNumber, NumberRepr, Shape};
pub use order::{
    as_fuzzy_number, compare, compare_componentwise, compare_zero, contains_zero, contains_zero_per_level,
    distance, gh_difference, is_zero, LevelMembership, OrderResult, VectorOrder,
};
pub use vector::{weighted_sum, FuzzyMatrix, FuzzyVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("non-finite value")]
    NonFinite,
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid level grid: {0}")]
    InvalidGrid(String),
    #[error("grid has {levels} levels but {cuts} cuts were given")]
    LengthMismatch { levels: usize, cuts: usize },
    #[error("tolerance must be non-negative, got {0}")]
    NegativeTolerance(f64),
    #[error("not a fuzzy number: cut at level {inner} is not contained in cut at level {outer}")]
    NotAFuzzyNumber { outer: f64, inner: f64 },
    #[error("cuts are not nested: cut at level {inner} is not contained in cut at level {outer}")]
    NotNested { outer: f64, inner: f64 },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("level {0} outside [0, 1]")]
    LevelOutOfRange(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} must be nonempty")]
    Empty(&'static str),
}
