//! Small dense linear programs: two-phase simplex with Bland's rule.

mod simplex;

use log::debug;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use simplex::{Phase, Tableau};

/// Constraint and bound violations up to this size are accepted.
pub const FEAS_TOL: f64 = 1e-8;

const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Self { coeffs, relation, rhs }
    }

    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// Amount by which `x` violates the constraint (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs: f64 = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }

    fn scale(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, v)| (a * v).abs())
            .fold(self.rhs.abs().max(1.0), f64::max)
    }
}

/// Sparse row `(column, coefficient)` pairs with its relation and right-hand side.
type BoundRow = (Vec<(usize, f64)>, Relation, f64);

/// Optional lower and upper bound of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bounds {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Bounds {
    pub const FREE: Bounds = Bounds { lo: None, hi: None };
    pub const NONNEG: Bounds = Bounds { lo: Some(0.0), hi: None };

    pub fn new(lo: Option<f64>, hi: Option<f64>) -> Self {
        Self { lo, hi }
    }

    pub fn range(lo: f64, hi: f64) -> Self {
        Self::new(Some(lo), Some(hi))
    }

    fn violation(&self, v: f64) -> f64 {
        let below = self.lo.map_or(0.0, |l| (l - v).max(0.0));
        let above = self.hi.map_or(0.0, |h| (v - h).max(0.0));
        below + above
    }
}

/// `min cᵀx` subject to linear rows and per-variable bounds. Variables are
/// free unless bounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bounds>,
}

impl LinearProgram {
    /// `n` free variables, zero objective, no constraints.
    pub fn new(n: usize) -> Self {
        Self {
            objective: vec![0.0; n],
            constraints: Vec::new(),
            bounds: vec![Bounds::FREE; n],
        }
    }

    pub fn nvars(&self) -> usize {
        self.objective.len()
    }

    pub fn minimize(mut self, c: Vec<f64>) -> Self {
        self.objective = c;
        self
    }

    pub fn subject_to(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn bound(mut self, j: usize, b: Bounds) -> Self {
        self.bounds[j] = b;
        self
    }

    pub fn all_bounds(mut self, b: Bounds) -> Self {
        self.bounds = vec![b; self.objective.len()];
        self
    }

    /// Largest constraint or bound violation of `x`, relative to each row's scale.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self
            .constraints
            .iter()
            .map(|c| c.violation(x) / c.scale(x))
            .fold(0.0, f64::max);
        self.bounds
            .iter()
            .zip(x)
            .map(|(b, &v)| b.violation(v) / v.abs().max(1.0))
            .fold(rows, f64::max)
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.nvars();
        if n == 0 {
            return Err(LpError::NoVariables);
        }
        if self.bounds.len() != n {
            return Err(LpError::DimensionMismatch {
                expected: n,
                found: self.bounds.len(),
            });
        }
        if let Some(c) = self.constraints.iter().find(|c| c.coeffs.len() != n) {
            return Err(LpError::DimensionMismatch {
                expected: n,
                found: c.coeffs.len(),
            });
        }
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self
                .constraints
                .iter()
                .all(|c| c.rhs.is_finite() && c.coeffs.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(LpError::NonFinite);
        }
        for (j, b) in self.bounds.iter().enumerate() {
            let bad_nan = b.lo.is_some_and(f64::is_nan) || b.hi.is_some_and(f64::is_nan);
            if bad_nan || matches!((b.lo, b.hi), (Some(l), Some(h)) if l > h) {
                return Err(LpError::InvalidBounds(j));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub point: Option<Vec<f64>>,
    pub value: Option<f64>,
}

impl LpOutcome {
    fn without_point(status: LpStatus) -> Self {
        Self {
            status,
            point: None,
            value: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("linear program has no variables")]
    NoVariables,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("invalid bounds on variable {0}")]
    InvalidBounds(usize),
    #[error("simplex iteration limit reached (possible cycling)")]
    IterationLimit,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// `x_j = offset + Σ coef · y_col` with `y >= 0`.
struct VarMap {
    offset: f64,
    cols: Vec<(usize, f64)>,
}

/// Solves `p`. Optimal points are basic and re-checked against every row and bound.
pub fn lp_solve(p: &LinearProgram) -> Result<LpOutcome, LpError> {
    p.validate()?;
    let n = p.nvars();

    // Map every variable onto nonnegative structural columns. Variables whose
    // bounds contain 0 are split so that the all-nonbasic point is 0, which
    // makes an unconstrained solve return the projected origin.
    let mut maps = Vec::with_capacity(n);
    let mut ny = 0;
    let mut bound_rows: Vec<BoundRow> = Vec::new();
    for b in &p.bounds {
        match (b.lo, b.hi) {
            (Some(l), hi) if l >= 0.0 => {
                maps.push(VarMap {
                    offset: l,
                    cols: vec![(ny, 1.0)],
                });
                if let Some(h) = hi {
                    bound_rows.push((vec![(ny, 1.0)], Relation::Le, h - l));
                }
                ny += 1;
            }
            (lo, Some(h)) if h <= 0.0 => {
                maps.push(VarMap {
                    offset: h,
                    cols: vec![(ny, -1.0)],
                });
                if let Some(l) = lo {
                    bound_rows.push((vec![(ny, 1.0)], Relation::Le, h - l));
                }
                ny += 1;
            }
            (lo, hi) => {
                let cols = vec![(ny, 1.0), (ny + 1, -1.0)];
                if let Some(h) = hi {
                    bound_rows.push((cols.clone(), Relation::Le, h));
                }
                if let Some(l) = lo {
                    bound_rows.push((cols.clone(), Relation::Ge, l));
                }
                maps.push(VarMap { offset: 0.0, cols });
                ny += 2;
            }
        }
    }

    // Rows in y-space.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    for c in &p.constraints {
        let mut a = vec![0.0; ny];
        let mut rhs = c.rhs;
        for (coef, m) in c.coeffs.iter().zip(&maps) {
            rhs -= coef * m.offset;
            for &(k, s) in &m.cols {
                a[k] += coef * s;
            }
        }
        rows.push((a, c.relation, rhs));
    }
    for (cols, rel, rhs) in bound_rows {
        let mut a = vec![0.0; ny];
        for (k, s) in cols {
            a[k] += s;
        }
        rows.push((a, rel, rhs));
    }
    let mut cost = vec![0.0; ny];
    let mut cost_offset = 0.0;
    for (c, m) in p.objective.iter().zip(&maps) {
        cost_offset += c * m.offset;
        for &(k, s) in &m.cols {
            cost[k] += c * s;
        }
    }

    // Normalise to nonnegative right-hand sides.
    for (a, rel, rhs) in rows.iter_mut() {
        if *rhs < 0.0 {
            a.iter_mut().for_each(|v| *v = -*v);
            *rhs = -*rhs;
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    let m = rows.len();
    let nslack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let first_art = ny + nslack;
    let ncols = first_art + nart;
    let mut tab = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut s, mut t) = (ny, first_art);
    for (a, rel, rhs) in &rows {
        let mut row = vec![0.0; ncols + 1];
        row[..ny].copy_from_slice(a);
        row[ncols] = *rhs;
        match rel {
            Relation::Le => {
                row[s] = 1.0;
                basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -1.0;
                s += 1;
                row[t] = 1.0;
                basis.push(t);
                t += 1;
            }
            Relation::Eq => {
                row[t] = 1.0;
                basis.push(t);
                t += 1;
            }
        }
        tab.push(row);
    }
    let b_norm = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let mut tableau = Tableau::new(tab, basis, ncols, MAX_ITERATIONS);

    if nart > 0 {
        let mut phase1 = vec![0.0; ncols];
        phase1[first_art..].iter_mut().for_each(|v| *v = 1.0);
        match tableau.optimize(&phase1, &|_| true) {
            Phase::IterationLimit => return Err(LpError::IterationLimit),
            Phase::Unbounded => return Err(LpError::Numerical("phase 1 reported unbounded".into())),
            Phase::Optimal => {}
        }
        let infeas = tableau.objective(&phase1);
        debug!("phase 1 residual {infeas:e}");
        if infeas > FEAS_TOL * b_norm.max(1.0) {
            return Ok(LpOutcome::without_point(LpStatus::Infeasible));
        }
        tableau.expel(&|j| j < first_art);
    }

    let mut phase2 = cost.clone();
    phase2.resize(ncols, 0.0);
    match tableau.optimize(&phase2, &|j| j < first_art) {
        Phase::IterationLimit => return Err(LpError::IterationLimit),
        Phase::Unbounded => return Ok(LpOutcome::without_point(LpStatus::Unbounded)),
        Phase::Optimal => {}
    }
    debug_assert!(tableau.basis().iter().all(|&b| b < first_art));

    let y = tableau.solution();
    let mut x: Vec<f64> = maps
        .iter()
        .map(|m| m.offset + m.cols.iter().map(|&(k, s)| s * y[k]).sum::<f64>())
        .collect();
    for (v, b) in x.iter_mut().zip(&p.bounds) {
        if let Some(l) = b.lo {
            *v = v.max(l);
        }
        if let Some(h) = b.hi {
            *v = v.min(h);
        }
        *v += 0.0;
    }
    let viol = p.max_violation(&x);
    if viol > FEAS_TOL {
        return Err(LpError::Numerical(format!("returned point violates the constraints by {viol:e}")));
    }
    let value = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>();
    debug_assert!((value - (tableau.objective(&phase2) + cost_offset)).abs() <= 1e-6 * value.abs().max(1.0));
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        point: Some(x),
        value: Some(value),
    })
}

/// Phase-1 feasibility of `constraints` under `bounds` (zero objective).
pub fn lp_feasible(constraints: Vec<Constraint>, bounds: Vec<Bounds>) -> Result<LpOutcome, LpError> {
    let n = bounds.len();
    lp_solve(&LinearProgram {
        objective: vec![0.0; n],
        constraints,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(o: &LpOutcome) -> &[f64] {
        o.point.as_deref().unwrap()
    }

    #[test]
    fn single_lower_bound_row() {
        let p = LinearProgram::new(1).minimize(vec![1.0]).subject_to(Constraint::ge(vec![1.0], 3.0));
        let o = lp_solve(&p).unwrap();
        assert!(o.is_optimal());
        assert!((point(&o)[0] - 3.0).abs() < 1e-12);
        assert!((o.value.unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn contradictory_rows() {
        let p = LinearProgram::new(1)
            .subject_to(Constraint::le(vec![1.0], 0.0))
            .subject_to(Constraint::ge(vec![1.0], 1.0));
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Infeasible);
        let q = lp_feasible(
            vec![Constraint::eq(vec![1.0], 1.0), Constraint::eq(vec![1.0], 2.0)],
            vec![Bounds::FREE],
        )
        .unwrap();
        assert_eq!(q.status, LpStatus::Infeasible);
    }

    #[test]
    fn empty_constraints_give_projected_origin() {
        let o = lp_feasible(
            vec![],
            vec![Bounds::FREE, Bounds::range(1.0, 2.0), Bounds::range(-3.0, -1.0), Bounds::range(-1.0, 1.0)],
        )
        .unwrap();
        assert_eq!(point(&o), &[0.0, 1.0, -1.0, 0.0]);
    }

    #[test]
    fn simplex_row() {
        let o = lp_feasible(vec![Constraint::eq(vec![1.0, 1.0], 1.0)], vec![Bounds::NONNEG; 2]).unwrap();
        let x = point(&o);
        assert!((x[0] + x[1] - 1.0).abs() <= 1e-8 && x.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn unbounded_detected() {
        let p = LinearProgram::new(2)
            .minimize(vec![-1.0, 0.0])
            .all_bounds(Bounds::NONNEG)
            .subject_to(Constraint::le(vec![-1.0, 1.0], 1.0));
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn fritz_john_rows_at_breakpoints() {
        // Gradient endpoints at levels 0 and 1 for the 1-D example.
        let mut p = LinearProgram::new(2)
            .all_bounds(Bounds::NONNEG)
            .subject_to(Constraint::eq(vec![1.0, 1.0], 1.0));
        for (lo, hi) in [([-16.0, -4.0], [7.0, 7.0]), ([-8.0, 5.0], [-8.0, 5.0])] {
            p.push(Constraint::le(lo.to_vec(), 0.0));
            p.push(Constraint::ge(hi.to_vec(), 0.0));
        }
        let o = lp_solve(&p).unwrap();
        let x = point(&o);
        assert!((x[0] - 5.0 / 13.0).abs() < 1e-9 && (x[1] - 8.0 / 13.0).abs() < 1e-9);
        assert!(p.max_violation(&[5.0 / 13.0, 8.0 / 13.0]) < 1e-12);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let p = LinearProgram::new(2)
            .all_bounds(Bounds::NONNEG)
            .minimize(vec![1.0, 2.0])
            .subject_to(Constraint::eq(vec![1.0, 1.0], 1.0))
            .subject_to(Constraint::eq(vec![2.0, 2.0], 2.0));
        let o = lp_solve(&p).unwrap();
        assert_eq!(point(&o), &[1.0, 0.0]);
    }

    #[test]
    fn bad_input_is_rejected() {
        let p = LinearProgram::new(2).subject_to(Constraint::le(vec![1.0], 0.0));
        assert!(matches!(lp_solve(&p), Err(LpError::DimensionMismatch { .. })));
        assert!(matches!(lp_solve(&LinearProgram::new(0)), Err(LpError::NoVariables)));
        let q = LinearProgram::new(1).bound(0, Bounds::range(1.0, 0.0));
        assert!(matches!(lp_solve(&q), Err(LpError::InvalidBounds(0))));
    }
}
