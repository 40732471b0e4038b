use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::FuzzyExpr;
use crate::fuzzy::{compare, CutFamily, FuzzyError, Interval, OrderResult};
use crate::settings::Settings;

/// A sampled violation of `H(θx₁ + (1−θ)x₂) ⪯≦ θH(x₁) + (1−θ)H(x₂)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityCounterexample {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub trials: usize,
    /// Samples satisfying the weak order.
    pub passed: usize,
    /// Samples where the inequality is also strict somewhere.
    pub strict: usize,
    pub counterexample: Option<ConvexityCounterexample>,
}

impl ConvexityReport {
    pub fn convex_suspected(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Samples point pairs and weights in `bounds` and checks the convexity
/// inequality in the weak order. Sampling only; never a certificate.
pub fn convexity_sample(
    e: &FuzzyExpr,
    bounds: &[Interval],
    trials: usize,
    seed: u64,
    settings: &Settings,
) -> Result<ConvexityReport, FuzzyError> {
    if bounds.len() != e.dim() {
        return Err(FuzzyError::DimensionMismatch {
            expected: e.dim(),
            found: bounds.len(),
        });
    }
    if trials == 0 {
        return Err(FuzzyError::Empty("trial count"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        bounds
            .iter()
            .map(|b| if b.width() > 0.0 { rng.random_range(b.lo()..=b.hi()) } else { b.lo() })
            .collect()
    };
    let mut report = ConvexityReport {
        trials,
        passed: 0,
        strict: 0,
        counterexample: None,
    };
    for _ in 0..trials {
        let x1 = draw(&mut rng);
        let x2 = draw(&mut rng);
        let theta: f64 = rng.random();
        let mid: Vec<f64> = x1.iter().zip(&x2).map(|(a, b)| theta * a + (1.0 - theta) * b).collect();
        let left = e.eval(&mid)?;
        let right = e.eval(&x1)?.scale(theta).add(&e.eval(&x2)?.scale(1.0 - theta));
        let ord = compare(&left, &right, &settings.grid, settings.tol);
        if ord.weak_all {
            report.passed += 1;
            report.strict += usize::from(ord.strict_some);
        } else if report.counterexample.is_none() {
            report.counterexample = Some(ConvexityCounterexample { x1, x2, theta });
        }
    }
    Ok(report)
}

/// Both sides of `(x₂ − x₁)ᵀ∇H(x₁) ⪯ H(x₂) ⊖_gH H(x₁)` and their comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientInequalityReport {
    pub left: CutFamily,
    pub right: CutFamily,
    pub order: OrderResult,
}

pub fn gradient_inequality_check(
    e: &FuzzyExpr,
    x1: &[f64],
    x2: &[f64],
    settings: &Settings,
) -> Result<GradientInequalityReport, FuzzyError> {
    if x2.len() != x1.len() {
        return Err(FuzzyError::DimensionMismatch {
            expected: x1.len(),
            found: x2.len(),
        });
    }
    let step: Vec<f64> = x2.iter().zip(x1).map(|(b, a)| b - a).collect();
    let left = e.directional(x1, &step)?;
    let right = e.eval(x2)?.gh_sub(&e.eval(x1)?);
    let order = compare(&left, &right, &settings.grid, settings.tol);
    Ok(GradientInequalityReport { left, right, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Monomial, Term};
    use crate::fuzzy::FuzzyNumber;

    fn quad(c: FuzzyNumber) -> FuzzyExpr {
        FuzzyExpr::new(1, vec![Term::new(c, Monomial::new(vec![2]))], None).unwrap()
    }

    fn box1() -> Vec<Interval> {
        vec![Interval::new(-2.0, 2.0).unwrap()]
    }

    #[test]
    fn convex_quadratic_passes() {
        let r = convexity_sample(&quad(FuzzyNumber::tri(1.0, 2.0, 5.0)), &box1(), 1000, 7, &Settings::default())
            .unwrap();
        assert!(r.convex_suspected());
        assert_eq!(r.passed, 1000);
    }

    #[test]
    fn linear_passes_on_a_sign_fixed_box() {
        let e = FuzzyExpr::new(1, vec![Term::new(FuzzyNumber::tri(-4.0, 5.0, 7.0), Monomial::new(vec![1]))], None)
            .unwrap();
        let pos = vec![Interval::new(0.0, 2.0).unwrap()];
        let r = convexity_sample(&e, &pos, 200, 1, &Settings::default()).unwrap();
        assert!(r.convex_suspected());
        // Across x = 0 the combination θH(x₁) + (1−θ)H(x₂) is wider than H at the midpoint.
        let r = convexity_sample(&e, &box1(), 200, 1, &Settings::default()).unwrap();
        assert!(!r.convex_suspected());
    }

    #[test]
    fn concave_lower_endpoint_is_caught() {
        let r = convexity_sample(&quad(FuzzyNumber::tri(-2.0, -1.0, 1.0)), &box1(), 1000, 7, &Settings::default())
            .unwrap();
        assert!(!r.convex_suspected());
    }

    #[test]
    fn gradient_inequality_examples() {
        let s = Settings::default();
        let e = quad(FuzzyNumber::tri(1.0, 2.0, 5.0));
        let r = gradient_inequality_check(&e, &[0.0], &[1.0], &s).unwrap();
        assert!(r.order.weak_all);
        assert!(r.left.cuts().iter().all(|c| *c == Interval::zero()));
        assert_eq!(r.right.at(0.0), Interval::new(1.0, 5.0).unwrap());
        let same = gradient_inequality_check(&e, &[0.7], &[0.7], &s).unwrap();
        assert!(same.order.weak_all && !same.order.strict_some);
    }
}
