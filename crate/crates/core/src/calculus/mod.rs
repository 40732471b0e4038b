//! Fuzzy-coefficient polynomials: level-wise evaluation, gH-gradients,
//! directional derivatives and sampled convexity diagnostics.

mod convexity;
mod expr;

pub use convexity::{
    convexity_sample, gradient_inequality_check, ConvexityCounterexample, ConvexityReport,
    GradientInequalityReport,
};
pub use expr::{ExprRepr, FuzzyExpr, FuzzyGradient, Monomial, Term};
