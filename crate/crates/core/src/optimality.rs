//! Active sets, Fritz-John and KKT multipliers, linear independence of fuzzy
//! vectors and first-order checks for fuzzy optimization problems.

use serde::{Deserialize, Serialize};

use crate::calculus::{convexity_sample, ConvexityReport, FuzzyExpr, FuzzyGradient};
use crate::cones::feasible_active;
use crate::error::{Error, Result};
use crate::fuzzy::{Cuts, CutFamily, FuzzyError, FuzzyVector, Interval, LevelGrid};
use crate::lp::{lp_solve, Bounds, Constraint, LinearProgram};
use crate::settings::Settings;

/// `min H(x)` subject to `Y_j(x) ⪯≦ 0̃`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemRepr", into = "ProblemRepr")]
pub struct FuzzyProblem {
    objective: FuzzyExpr,
    constraints: Vec<FuzzyExpr>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemRepr {
    pub objective: FuzzyExpr,
    #[serde(default)]
    pub constraints: Vec<FuzzyExpr>,
}

impl TryFrom<ProblemRepr> for FuzzyProblem {
    type Error = FuzzyError;

    fn try_from(r: ProblemRepr) -> std::result::Result<Self, FuzzyError> {
        FuzzyProblem::new(r.objective, r.constraints)
    }
}

impl From<FuzzyProblem> for ProblemRepr {
    fn from(p: FuzzyProblem) -> Self {
        ProblemRepr {
            objective: p.objective,
            constraints: p.constraints,
        }
    }
}

impl FuzzyProblem {
    pub fn new(objective: FuzzyExpr, constraints: Vec<FuzzyExpr>) -> std::result::Result<Self, FuzzyError> {
        if let Some(c) = constraints.iter().find(|c| c.dim() != objective.dim()) {
            return Err(FuzzyError::DimensionMismatch {
                expected: objective.dim(),
                found: c.dim(),
            });
        }
        Ok(Self { objective, constraints })
    }

    pub fn unconstrained(objective: FuzzyExpr) -> Self {
        Self {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn objective(&self) -> &FuzzyExpr {
        &self.objective
    }

    pub fn constraints(&self) -> &[FuzzyExpr] {
        &self.constraints
    }

    pub fn dim(&self) -> usize {
        self.objective.dim()
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(FuzzyError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            }
            .into())
        }
    }
}

/// Constraints with `Y_j(x) = 0̃` (within `active_tol` at every level).
/// Errors if some constraint is violated at `x`.
pub fn active_set(p: &FuzzyProblem, x: &[f64], settings: &Settings) -> Result<Vec<usize>> {
    p.check_point(x)?;
    feasible_active(&p.constraints, x, settings)
}

/// Multipliers `(κ₀, κ₁, …, κ_s)` with the stationarity residual
/// `κ₀∇H(x) + Σ κ_j ∇Y_j(x)` per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierCertificate {
    pub kappa0: f64,
    /// One entry per constraint; zero off the active set.
    pub kappas: Vec<f64>,
    pub active_set: Vec<usize>,
    /// Whether `κ₀ + Σκ_j = 1` was imposed.
    pub normalized: bool,
    pub residuals: Vec<CutFamily>,
}

/// Gradients of the objective and every constraint at `x`.
struct Gradients {
    objective: FuzzyGradient,
    constraints: Vec<FuzzyGradient>,
}

impl Gradients {
    fn at(p: &FuzzyProblem, x: &[f64]) -> Result<Self> {
        Ok(Self {
            objective: p.objective.grad(x)?,
            constraints: p.constraints.iter().map(|c| c.grad(x)).collect::<std::result::Result<_, _>>()?,
        })
    }

    /// Evaluation levels: the grid plus every partial's breakpoints.
    fn levels(&self, grid: &LevelGrid) -> LevelGrid {
        let kinks: Vec<f64> = std::iter::once(&self.objective)
            .chain(&self.constraints)
            .flat_map(|g| g.partials().iter().flat_map(|f| f.kinks()))
            .collect();
        grid.with_levels(&kinks)
    }

    fn residuals(&self, kappa0: f64, kappas: &[f64]) -> Vec<CutFamily> {
        (0..self.objective.len())
            .map(|i| {
                let start = self.objective.partials()[i].scale(kappa0);
                self.constraints
                    .iter()
                    .zip(kappas)
                    .filter(|(_, &k)| k != 0.0)
                    .fold(start, |acc, (g, &k)| acc.add(&g.partials()[i].scale(k)))
            })
            .collect()
    }
}

/// Solves for nonnegative multipliers on `{objective} ∪ active`.
///
/// Nonnegative weights keep endpoint selections fixed, so `0 ∈ Σ κ_k D_k` at a
/// level is the pair `Σ κ_k lo_k <= 0 <= Σ κ_k hi_k`.
fn solve_multipliers(
    p: &FuzzyProblem,
    x: &[f64],
    kkt: bool,
    settings: &Settings,
) -> Result<MultiplierCertificate> {
    p.check_point(x)?;
    let active = feasible_active(&p.constraints, x, settings)?;
    let grads = Gradients::at(p, x)?;
    let levels = grads.levels(&settings.grid);
    let k = active.len();
    // Variables: κ₀ (FJ only) followed by the active κ_j.
    let offset = usize::from(!kkt);
    let nv = offset + k;
    let mut kappa0 = 1.0;
    let mut kappas = vec![0.0; p.constraints.len()];

    if nv > 0 {
        let objective = if kkt {
            vec![1.0; nv]
        } else {
            let mut c = vec![0.0; nv];
            c[0] = -1.0;
            c
        };
        let mut lp = LinearProgram::new(nv).all_bounds(Bounds::NONNEG).minimize(objective);
        if !kkt {
            lp.push(Constraint::eq(vec![1.0; nv], 1.0));
        }
        for &rho in levels.levels() {
            for i in 0..p.dim() {
                let obj = grads.objective.partials()[i].at(rho);
                let cuts: Vec<Interval> = active
                    .iter()
                    .map(|&j| grads.constraints[j].partials()[i].at(rho))
                    .collect();
                let (mut lo, mut hi) = (vec![0.0; nv], vec![0.0; nv]);
                for (v, c) in cuts.iter().enumerate() {
                    lo[offset + v] = c.lo();
                    hi[offset + v] = c.hi();
                }
                let (rhs_lo, rhs_hi) = if kkt {
                    (-obj.lo(), -obj.hi())
                } else {
                    lo[0] = obj.lo();
                    hi[0] = obj.hi();
                    (0.0, 0.0)
                };
                lp.push(Constraint::le(lo, rhs_lo));
                lp.push(Constraint::ge(hi, rhs_hi));
            }
        }
        let out = lp_solve(&lp)?;
        let point = out.point.ok_or(Error::NoCertificate)?;
        if !kkt {
            kappa0 = point[0];
        }
        for (v, &j) in active.iter().enumerate() {
            kappas[j] = point[offset + v];
        }
    } else if !grads
        .residuals(1.0, &kappas)
        .iter()
        .all(|f| zero_excess(f, &levels) <= settings.tol)
    {
        return Err(Error::NoCertificate);
    }

    Ok(MultiplierCertificate {
        kappa0,
        residuals: grads.residuals(kappa0, &kappas),
        kappas,
        active_set: active,
        normalized: !kkt,
    })
}

/// Fritz-John multipliers with `κ₀ + Σκ_j = 1`, preferring the largest `κ₀`.
pub fn fritz_john_find(p: &FuzzyProblem, x: &[f64], settings: &Settings) -> Result<MultiplierCertificate> {
    solve_multipliers(p, x, false, settings)
}

/// KKT multipliers: `κ₀ = 1`, smallest `Σκ_j`.
pub fn kkt_find(p: &FuzzyProblem, x: &[f64], settings: &Settings) -> Result<MultiplierCertificate> {
    solve_multipliers(p, x, true, settings)
}

/// Pass flag with the worst observed violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub worst: f64,
}

impl Check {
    fn new(worst: f64, limit: f64) -> Self {
        Self {
            pass: worst <= limit,
            worst,
        }
    }
}

/// Stationarity failure location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualMiss {
    pub coordinate: usize,
    pub rho: f64,
    pub interval: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infeasibility: Option<String>,
    pub stationarity: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationarity_miss: Option<ResidualMiss>,
    pub complementary_slackness: Check,
    pub nonnegativity: Check,
    pub not_all_zero: bool,
    pub active_set: Vec<usize>,
    pub residuals: Vec<CutFamily>,
}

fn zero_excess(f: &CutFamily, levels: &LevelGrid) -> f64 {
    levels
        .union(f.grid())
        .levels()
        .iter()
        .map(|&r| f.at(r).zero_excess())
        .fold(0.0, f64::max)
}

/// Checks the Fritz-John system for given multipliers. Never fails on
/// mathematical grounds; every condition is reported.
pub fn fritz_john_verify(
    p: &FuzzyProblem,
    x: &[f64],
    kappa0: f64,
    kappas: &[f64],
    settings: &Settings,
) -> Result<VerifyReport> {
    p.check_point(x)?;
    if kappas.len() != p.constraints.len() {
        return Err(FuzzyError::DimensionMismatch {
            expected: p.constraints.len(),
            found: kappas.len(),
        }
        .into());
    }
    let (feasible, infeasibility, active_set) = match feasible_active(&p.constraints, x, settings) {
        Ok(a) => (true, None, a),
        Err(e @ Error::Infeasible { .. }) => (false, Some(e.to_string()), Vec::new()),
        Err(e) => return Err(e),
    };
    let grads = Gradients::at(p, x)?;
    let levels = grads.levels(&settings.grid);
    let residuals = grads.residuals(kappa0, kappas);
    let scale = kappas.iter().fold(kappa0.abs(), |s, k| s + k.abs()).max(1.0);
    let limit = settings.tol * scale;

    let mut worst = 0.0;
    let mut miss = None;
    for (i, f) in residuals.iter().enumerate() {
        for &rho in levels.union(f.grid()).levels() {
            let c = f.at(rho);
            let e = c.zero_excess();
            if e > worst {
                worst = e;
                if e > limit {
                    miss = Some(ResidualMiss {
                        coordinate: i,
                        rho,
                        interval: c,
                    });
                }
            }
        }
    }
    let stationarity = Check::new(worst, limit);

    // κ_j Y_j(x) = 0̃: positive multipliers only where the constraint value is 0̃.
    let mut cs_worst: f64 = 0.0;
    let mut cs_pass = true;
    for (j, (y, &k)) in p.constraints.iter().zip(kappas).enumerate() {
        if k == 0.0 {
            continue;
        }
        let v = y.eval(x)?;
        let size = levels
            .union(v.grid())
            .levels()
            .iter()
            .map(|&r| {
                let c = v.at(r);
                c.lo().abs().max(c.hi().abs())
            })
            .fold(0.0, f64::max);
        cs_worst = cs_worst.max(k.abs() * size);
        if k.abs() > settings.tol && !active_set.contains(&j) && size > settings.active_tol {
            cs_pass = false;
        }
    }
    let complementary_slackness = Check {
        pass: cs_pass,
        worst: cs_worst,
    };

    let neg = std::iter::once(kappa0)
        .chain(kappas.iter().copied())
        .map(|k| (-k).max(0.0))
        .fold(0.0, f64::max);
    let nonnegativity = Check::new(neg, 0.0);
    let not_all_zero = kappa0 != 0.0 || kappas.iter().any(|&k| k != 0.0);
    let pass = feasible && stationarity.pass && complementary_slackness.pass && nonnegativity.pass && not_all_zero;
    Ok(VerifyReport {
        pass,
        feasible,
        infeasibility,
        stationarity,
        stationarity_miss: miss,
        complementary_slackness,
        nonnegativity,
        not_all_zero,
        active_set,
        residuals,
    })
}

/// The KKT system: Fritz-John with `κ₀ = 1`.
pub fn kkt_verify(p: &FuzzyProblem, x: &[f64], kappas: &[f64], settings: &Settings) -> Result<VerifyReport> {
    fritz_john_verify(p, x, 1.0, kappas, settings)
}

/// Largest family accepted by [`linear_independence_check`].
pub const MAX_INDEPENDENCE_VECTORS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub independent: bool,
    /// Nonzero `ϑ` (with `Σ|ϑ_k| = 1`) such that `0 ∈ Σ ϑ_k U_k` everywhere.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dependence: Option<Vec<f64>>,
    pub orthants_checked: usize,
}

/// Linear independence of fuzzy vectors by sign-orthant enumeration.
pub fn linear_independence_check(vs: &[FuzzyVector], settings: &Settings) -> Result<IndependenceReport> {
    let k = vs.len();
    if k == 0 {
        return Err(FuzzyError::Empty("vector family").into());
    }
    if k > MAX_INDEPENDENCE_VECTORS {
        return Err(Error::TooManyVectors {
            found: k,
            max: MAX_INDEPENDENCE_VECTORS,
        });
    }
    let n = vs[0].len();
    if let Some(v) = vs.iter().find(|v| v.len() != n) {
        return Err(FuzzyError::DimensionMismatch {
            expected: n,
            found: v.len(),
        }
        .into());
    }
    let kinks: Vec<f64> = vs
        .iter()
        .flat_map(|v| v.components().iter().flat_map(|m| m.kinks()))
        .collect();
    let levels = settings.grid.with_levels(&kinks);

    // ϑ and −ϑ certify together, so the first sign is fixed to +.
    let orthants = 1usize << (k - 1);
    for mask in 0..orthants {
        let sign = |v: usize| if v > 0 && mask >> (v - 1) & 1 == 1 { -1.0 } else { 1.0 };
        let mut lp = LinearProgram::new(k)
            .all_bounds(Bounds::NONNEG)
            .subject_to(Constraint::eq(vec![1.0; k], 1.0));
        for &rho in levels.levels() {
            for i in 0..n {
                let (mut lo, mut hi) = (vec![0.0; k], vec![0.0; k]);
                for v in 0..k {
                    let c = vs[v].get(i).cut_at(rho).scale(sign(v));
                    lo[v] = c.lo();
                    hi[v] = c.hi();
                }
                lp.push(Constraint::le(lo, 0.0));
                lp.push(Constraint::ge(hi, 0.0));
            }
        }
        if let Some(a) = lp_solve(&lp)?.point {
            return Ok(IndependenceReport {
                independent: false,
                dependence: Some((0..k).map(|v| sign(v) * a[v] + 0.0).collect()),
                orthants_checked: mask + 1,
            });
        }
    }
    Ok(IndependenceReport {
        independent: true,
        dependence: None,
        orthants_checked: orthants,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderReport {
    pub pass: bool,
    pub partials: Vec<CutFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss: Option<ResidualMiss>,
}

/// `0 ∈ D_i H(x)` at every level, for every coordinate.
pub fn first_order_unconstrained_check(e: &FuzzyExpr, x: &[f64], settings: &Settings) -> Result<FirstOrderReport> {
    let g = e.grad(x)?;
    let mut miss = None;
    'outer: for (i, f) in g.partials().iter().enumerate() {
        for &rho in settings.grid.union(f.grid()).levels() {
            let c = f.at(rho);
            if !c.contains_zero(settings.tol) {
                miss = Some(ResidualMiss {
                    coordinate: i,
                    rho,
                    interval: c,
                });
                break 'outer;
            }
        }
    }
    Ok(FirstOrderReport {
        pass: miss.is_none(),
        partials: g.partials().to_vec(),
        miss,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SufficiencyReport {
    /// Always `"sampling"`: convexity is sampled, never proven.
    pub method: String,
    pub kkt: VerifyReport,
    pub objective_convexity: ConvexityReport,
    pub constraint_convexity: Vec<ConvexityReport>,
    /// KKT holds and no convexity counterexample was sampled.
    pub supported: bool,
}

/// KKT verification plus sampled convexity of every expression on `bounds`.
pub fn kkt_sufficiency_report(
    p: &FuzzyProblem,
    x: &[f64],
    kappas: &[f64],
    bounds: &[Interval],
    trials: usize,
    seed: u64,
    settings: &Settings,
) -> Result<SufficiencyReport> {
    let kkt = kkt_verify(p, x, kappas, settings)?;
    let objective_convexity = convexity_sample(&p.objective, bounds, trials, seed, settings)?;
    let constraint_convexity = p
        .constraints
        .iter()
        .enumerate()
        .map(|(j, c)| convexity_sample(c, bounds, trials, seed.wrapping_add(j as u64 + 1), settings))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let supported = kkt.pass
        && objective_convexity.convex_suspected()
        && constraint_convexity.iter().all(ConvexityReport::convex_suspected);
    Ok(SufficiencyReport {
        method: "sampling".into(),
        kkt,
        objective_convexity,
        constraint_convexity,
        supported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Monomial, Term};
    use crate::fuzzy::FuzzyNumber;

    fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
        FuzzyNumber::tri(a, b, c)
    }

    fn crisp_problem() -> FuzzyProblem {
        let h = FuzzyExpr::new(1, vec![Term::new(FuzzyNumber::crisp(1.0), Monomial::new(vec![2]))], None).unwrap();
        let y = FuzzyExpr::new(
            1,
            vec![
                Term::new(FuzzyNumber::crisp(1.0), Monomial::new(vec![1])),
                Term::new(FuzzyNumber::crisp(-1.0), Monomial::new(vec![0])),
            ],
            None,
        )
        .unwrap();
        FuzzyProblem::new(h, vec![y]).unwrap()
    }

    #[test]
    fn crisp_interior_minimum() {
        let s = Settings::default();
        let p = crisp_problem();
        assert!(active_set(&p, &[0.0], &s).unwrap().is_empty());
        let c = fritz_john_find(&p, &[0.0], &s).unwrap();
        assert_eq!((c.kappa0, c.kappas.as_slice()), (1.0, &[0.0][..]));
        let k = kkt_find(&FuzzyProblem::unconstrained(p.objective().clone()), &[0.0], &s).unwrap();
        assert!(k.kappas.is_empty());
        let r = kkt_sufficiency_report(&p, &[0.0], &[0.0], &[Interval::new(-2.0, 2.0).unwrap()], 300, 3, &s).unwrap();
        assert!(r.supported);
    }

    #[test]
    fn all_zero_multipliers_fail() {
        let r = fritz_john_verify(&crisp_problem(), &[0.0], 0.0, &[0.0], &Settings::default()).unwrap();
        assert!(!r.not_all_zero && !r.pass);
    }

    #[test]
    fn independence_examples() {
        let s = Settings::default();
        let one = |m: FuzzyNumber| FuzzyVector::new(vec![m]).unwrap();
        assert!(linear_independence_check(&[one(tri(1.0, 2.0, 3.0))], &s).unwrap().independent);
        let z = linear_independence_check(&[one(FuzzyNumber::zero())], &s).unwrap();
        assert!(!z.independent);
        assert_eq!(z.dependence.as_deref(), Some(&[1.0][..]));
        let pair = [one(tri(1.0, 2.0, 3.0)), one(tri(2.0, 4.0, 6.0))];
        let r = linear_independence_check(&pair, &s).unwrap();
        assert!(!r.independent);
        let too_many: Vec<_> = (0..9).map(|_| one(FuzzyNumber::zero())).collect();
        assert!(matches!(linear_independence_check(&too_many, &s), Err(Error::TooManyVectors { .. })));
    }

    #[test]
    fn unconstrained_first_order() {
        let s = Settings::default();
        let e = FuzzyExpr::new(1, vec![Term::new(FuzzyNumber::crisp(1.0), Monomial::new(vec![2]))], None).unwrap();
        assert!(first_order_unconstrained_check(&e, &[0.0], &s).unwrap().pass);
        let miss = first_order_unconstrained_check(&e, &[1.0], &s).unwrap().miss.unwrap();
        assert_eq!(miss.interval, Interval::point(2.0));
    }

    #[test]
    fn infeasible_point_is_reported() {
        let s = Settings::default();
        let p = crisp_problem();
        assert!(matches!(active_set(&p, &[2.0], &s), Err(Error::Infeasible { constraint: 0, .. })));
        let r = fritz_john_verify(&p, &[2.0], 1.0, &[0.0], &s).unwrap();
        assert!(!r.feasible && !r.pass);
    }
}
