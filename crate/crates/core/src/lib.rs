//! Fuzzy optimization toolkit.

// `!(a <= b)` style guards deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod cones;
pub mod fixtures;
mod error;
pub mod gordan;
pub mod fuzzy;
pub mod lp;
pub mod optimality;
pub mod settings;
pub mod svm;

pub use calculus::{FuzzyExpr, FuzzyGradient, Monomial, Term};
pub use fuzzy::{
    CutFamily, Cuts, FuzzyError, FuzzyMatrix, FuzzyNumber, FuzzyVector, Interval, LevelGrid, OrderResult, Shape,
};
pub use error::{Error, Result};
pub use optimality::FuzzyProblem;
pub use settings::Settings;
pub use svm::{BiasSet, FuzzyDataset, Label, LabeledPoint, SvmSolution};
