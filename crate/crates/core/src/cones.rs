//! Descent and feasible-direction cones and the sampled emptiness test for
//! their intersection.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::calculus::FuzzyExpr;
use crate::error::{Error, Result};
use crate::fuzzy::{compare_zero, is_zero};
use crate::settings::Settings;

/// Default number of sampled directions.
pub const DEFAULT_TRIALS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibleSet {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `{x : Y_j(x) ⪯≦ 0̃ for all j}`, approximated by its linearized cone.
    Constrained { constraints: Vec<FuzzyExpr> },
}

impl FeasibleSet {
    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_box(&lo, &hi)?;
        Ok(FeasibleSet::Box { lo, hi })
    }
}

fn check_box(lo: &[f64], hi: &[f64]) -> Result<()> {
    if lo.len() != hi.len() {
        return Err(dim(lo.len(), hi.len()));
    }
    match lo.iter().zip(hi).position(|(l, h)| !(l <= h)) {
        Some(i) => Err(Error::InvalidBox(i)),
        None => Ok(()),
    }
}

fn dim(expected: usize, found: usize) -> Error {
    Error::Fuzzy(crate::fuzzy::FuzzyError::DimensionMismatch { expected, found })
}

/// `τᵀ∇H(x) ≺ 0̃`.
pub fn in_descent_cone(e: &FuzzyExpr, x: &[f64], tau: &[f64], settings: &Settings) -> Result<bool> {
    let d = e.directional(x, tau)?;
    Ok(compare_zero(&d, &settings.grid, settings.tol).strict_all)
}

/// Feasible directions of a box at `x`: nonzero, and pointing inward or along
/// the face in every coordinate sitting on a bound.
pub fn in_feasible_cone_box(lo: &[f64], hi: &[f64], x: &[f64], tau: &[f64], tol: f64) -> Result<bool> {
    check_box(lo, hi)?;
    if x.len() != lo.len() {
        return Err(dim(lo.len(), x.len()));
    }
    if tau.len() != lo.len() {
        return Err(dim(lo.len(), tau.len()));
    }
    if let Some(i) = (0..x.len()).find(|&i| x[i] < lo[i] - tol || x[i] > hi[i] + tol) {
        return Err(Error::OutsideBox(i));
    }
    if tau.iter().all(|&t| t == 0.0) {
        return Ok(false);
    }
    Ok((0..x.len()).all(|i| {
        let at_lo = (x[i] - lo[i]).abs() <= tol;
        let at_hi = (x[i] - hi[i]).abs() <= tol;
        (!at_lo || tau[i] >= 0.0) && (!at_hi || tau[i] <= 0.0)
    }))
}

/// Checks `Y_j(x) ⪯≦ 0̃` for every constraint; returns the indices with `Y_j(x) = 0̃`.
pub(crate) fn feasible_active(constraints: &[FuzzyExpr], x: &[f64], settings: &Settings) -> Result<Vec<usize>> {
    let mut active = Vec::new();
    for (j, y) in constraints.iter().enumerate() {
        let v = y.eval(x)?;
        let g = settings.grid.union(v.grid());
        if let Some(&level) = g.levels().iter().find(|&&r| v.at(r).hi() > settings.tol) {
            return Err(Error::Infeasible { constraint: j, level });
        }
        if is_zero(&v, &settings.grid, settings.active_tol) {
            active.push(j);
        }
    }
    Ok(active)
}

/// Membership in the linearized cone: `τᵀ∇Y_j(x) ≺ 0̃` for every active `j`.
pub fn in_linearized_feasible_cone(
    constraints: &[FuzzyExpr],
    x: &[f64],
    tau: &[f64],
    settings: &Settings,
) -> Result<bool> {
    let active = feasible_active(constraints, x, settings)?;
    linearized_with_active(constraints, &active, x, tau, settings)
}

fn linearized_with_active(
    constraints: &[FuzzyExpr],
    active: &[usize],
    x: &[f64],
    tau: &[f64],
    settings: &Settings,
) -> Result<bool> {
    if tau.iter().all(|&t| t == 0.0) {
        return Ok(false);
    }
    for &j in active {
        let d = constraints[j].directional(x, tau)?;
        if !compare_zero(&d, &settings.grid, settings.tol).strict_all {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeReport {
    /// No sampled direction lies in both cones.
    pub empty_suspected: bool,
    /// A direction in both cones; `x` is then not a local minimizer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<f64>>,
    /// Directions sampled before stopping.
    pub trials: usize,
}

/// Samples unit directions, stopping at the first one in both the descent
/// cone and the feasible-direction cone.
pub fn intersection_empty_sampled(
    e: &FuzzyExpr,
    set: &FeasibleSet,
    x: &[f64],
    trials: usize,
    seed: u64,
    settings: &Settings,
) -> Result<ConeReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trial count must be at least 1".into()));
    }
    if x.len() != e.dim() {
        return Err(dim(e.dim(), x.len()));
    }
    // Validate the point once, outside the loop.
    let active = match set {
        FeasibleSet::Box { lo, hi } => {
            in_feasible_cone_box(lo, hi, x, &vec![0.0; x.len()], settings.tol)?;
            Vec::new()
        }
        FeasibleSet::Constrained { constraints } => feasible_active(constraints, x, settings)?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=trials {
        let tau = unit_direction(&mut rng, x.len());
        let feasible = match set {
            FeasibleSet::Box { lo, hi } => in_feasible_cone_box(lo, hi, x, &tau, settings.tol)?,
            FeasibleSet::Constrained { constraints } => {
                linearized_with_active(constraints, &active, x, &tau, settings)?
            }
        };
        if feasible && in_descent_cone(e, x, &tau, settings)? {
            return Ok(ConeReport {
                empty_suspected: false,
                counterexample: Some(tau),
                trials: t,
            });
        }
    }
    Ok(ConeReport {
        empty_suspected: true,
        counterexample: None,
        trials,
    })
}

/// Uniform direction on the unit sphere in `n` dimensions.
pub fn unit_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Monomial, Term};
    use crate::fuzzy::FuzzyNumber;

    fn box_objective() -> FuzzyExpr {
        FuzzyExpr::new(
            2,
            vec![
                Term::new(FuzzyNumber::tri(2.0, 3.0, 7.0), Monomial::shifted(vec![2, 0], vec![1.5, 0.0]).unwrap()),
                Term::new(FuzzyNumber::tri(1.0, 2.0, 5.0), Monomial::new(vec![0, 2])),
                Term::new(FuzzyNumber::crisp(1.0), Monomial::one(2)),
            ],
            None,
        )
        .unwrap()
    }

    fn unit_box() -> FeasibleSet {
        FeasibleSet::boxed(vec![1.0, 1.0], vec![2.0, 2.0]).unwrap()
    }

    #[test]
    fn descent_cone_membership() {
        let s = Settings::default();
        let h = box_objective();
        assert!(in_descent_cone(&h, &[1.5, 1.0], &[0.7, -1.0], &s).unwrap());
        assert!(!in_descent_cone(&h, &[1.5, 1.0], &[1.0, 0.0], &s).unwrap());
        assert!(!in_descent_cone(&h, &[1.5, 1.0], &[0.0, 0.0], &s).unwrap());
    }

    #[test]
    fn box_cone_membership() {
        let (lo, hi) = ([1.0, 1.0], [2.0, 2.0]);
        assert!(in_feasible_cone_box(&lo, &hi, &[1.5, 1.0], &[-1.0, 0.2], 1e-9).unwrap());
        assert!(!in_feasible_cone_box(&lo, &hi, &[1.5, 2.0], &[0.0, 1.0], 1e-9).unwrap());
        assert!(in_feasible_cone_box(&lo, &hi, &[1.5, 1.5], &[0.3, -4.0], 1e-9).unwrap());
        assert!(!in_feasible_cone_box(&lo, &hi, &[1.5, 1.5], &[0.0, 0.0], 1e-9).unwrap());
        assert!(matches!(
            in_feasible_cone_box(&lo, &hi, &[3.0, 1.5], &[1.0, 0.0], 1e-9),
            Err(Error::OutsideBox(0))
        ));
    }

    #[test]
    fn sampled_intersection_on_box_example() {
        let s = Settings::default();
        let h = box_objective();
        let r = intersection_empty_sampled(&h, &unit_box(), &[1.5, 1.0], 2000, 42, &s).unwrap();
        assert!(r.empty_suspected && r.counterexample.is_none());
        let r = intersection_empty_sampled(&h, &unit_box(), &[1.5, 2.0], 100, 42, &s).unwrap();
        let tau = r.counterexample.unwrap();
        assert!(tau[1] < 0.0);
    }

    #[test]
    fn crisp_minimum_has_no_descent() {
        let e = FuzzyExpr::new(1, vec![Term::new(FuzzyNumber::crisp(1.0), Monomial::new(vec![2]))], None).unwrap();
        let set = FeasibleSet::Constrained { constraints: vec![] };
        let r = intersection_empty_sampled(&e, &set, &[0.0], 500, 1, &Settings::default()).unwrap();
        assert!(r.empty_suspected);
    }

    #[test]
    fn linearized_cone_at_fj_point() {
        let s = Settings::default();
        let y1 = FuzzyExpr::new(1, vec![Term::new(FuzzyNumber::tri(-4.0, 5.0, 7.0), Monomial::new(vec![1]))], None)
            .unwrap()
            .minus_gh(FuzzyNumber::tri(-8.0, 10.0, 14.0));
        let cs = vec![y1];
        assert!(!in_linearized_feasible_cone(&cs, &[2.0], &[-1.0], &s).unwrap());
        assert!(!in_linearized_feasible_cone(&cs, &[2.0], &[1.0], &s).unwrap());
        assert!(in_linearized_feasible_cone(&[], &[2.0], &[1.0], &s).unwrap());
        assert!(matches!(
            in_linearized_feasible_cone(&cs, &[3.0], &[1.0], &s),
            Err(Error::Infeasible { constraint: 0, .. })
        ));
    }
}
