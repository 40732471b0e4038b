//! Deciders for the fuzzy Gordan alternatives.
//!
//! For a fuzzy matrix `M` (`s × n`) the two alternatives are
//!
//! * I: some `y ∈ ℝˢ` has `Mᵀy ≺ 0̃` in every component;
//! * II: some `x >= 0`, `x ≠ 0`, has `0 ∈ (Mx)_i` at every level for every row `i`.
//!
//! The vector form is the `n × 1` case. Both alternatives can fail at once for
//! fuzzy data, so verdicts are three-valued.

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{compare_zero, Cuts, FuzzyMatrix, FuzzyVector, Interval, LevelGrid};
use crate::lp::{lp_solve, Bounds, Constraint, LinearProgram, LpStatus};
use crate::settings::Settings;

/// Optimal epigraph values at or above this do not count as strictly negative.
pub const STRICT_THRESHOLD: f64 = -1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alternative {
    AlternativeI,
    AlternativeII,
    NeitherDetected,
}

/// Cuts of `(Mx)_i` for every row at one level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelEvidence {
    pub rho: f64,
    pub rows: Vec<Interval>,
}

/// Where zero-membership first fails when neither alternative holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Lowest checked level at which no `x` puts zero in every row.
    pub level: f64,
    /// A row that on its own already excludes zero at that level, if any.
    pub component: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GordanVerdict {
    pub which: Alternative,
    pub first_holds: bool,
    pub second_holds: bool,
    /// Optimal value of `max_ρ max_j upper((Mᵀy)_j)` over `|y_i| <= 1`.
    pub epigraph_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_y: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificate: Vec<LevelEvidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

/// Levels at which all checks run: the configured grid plus every entry's breakpoints.
fn levels(m: &FuzzyMatrix, settings: &Settings) -> LevelGrid {
    settings.grid.with_levels(&m.kinks())
}

/// Searches `y` with `Mᵀy ≺ 0̃`. Returns the optimal epigraph value and,
/// when it is strictly negative and re-verifies, the witness.
fn search_first(m: &FuzzyMatrix, grid: &LevelGrid, settings: &Settings) -> Result<(f64, Option<Vec<f64>>)> {
    let (s, n) = (m.nrows(), m.ncols());
    // y = y⁺ − y⁻ with y± ∈ [0, 1]; the upper endpoint of Σ y_i m_ij is at most
    // Σ (y⁺_i hi_ij − y⁻_i lo_ij), with equality when y⁺_i y⁻_i = 0, which
    // holds at an optimum since hi >= lo.
    let nv = 2 * s + 1;
    let mut obj = vec![0.0; nv];
    obj[2 * s] = 1.0;
    let mut lp = LinearProgram::new(nv).minimize(obj);
    for i in 0..2 * s {
        lp = lp.bound(i, Bounds::range(0.0, 1.0));
    }
    for &rho in grid.levels() {
        for j in 0..n {
            let mut row = vec![0.0; nv];
            for i in 0..s {
                let c = m.get(i, j).cut_at(rho);
                row[i] = c.hi();
                row[s + i] = -c.lo();
            }
            row[2 * s] = -1.0;
            lp.push(Constraint::le(row, 0.0));
        }
    }
    let out = lp_solve(&lp)?;
    let (Some(p), Some(v)) = (out.point, out.value) else {
        return Err(Error::Lp(crate::lp::LpError::Numerical(format!(
            "alternative I program reported {:?}",
            out.status
        ))));
    };
    if v >= STRICT_THRESHOLD {
        return Ok((v, None));
    }
    let y: Vec<f64> = (0..s).map(|i| p[i] - p[s + i] + 0.0).collect();
    let verified = m
        .transpose_apply(&y)?
        .iter()
        .all(|f| compare_zero(f, grid, settings.tol).strict_all);
    if !verified {
        warn!("alternative I candidate {y:?} failed re-verification (epigraph value {v:e})");
        return Ok((v, None));
    }
    Ok((v, Some(y)))
}

/// `x >= 0`, `Σx = 1`, `0 ∈ (Mx)_i` at `rho` for the listed rows.
fn second_at(m: &FuzzyMatrix, rows: &[usize], rho: f64) -> Result<Option<Vec<f64>>> {
    let n = m.ncols();
    let mut lp = LinearProgram::new(n)
        .all_bounds(Bounds::NONNEG)
        .subject_to(Constraint::eq(vec![1.0; n], 1.0));
    for &i in rows {
        let cuts: Vec<Interval> = m.row(i).iter().map(|e| e.cut_at(rho)).collect();
        lp.push(Constraint::le(cuts.iter().map(Interval::lo).collect(), 0.0));
        lp.push(Constraint::ge(cuts.iter().map(Interval::hi).collect(), 0.0));
    }
    let out = lp_solve(&lp)?;
    Ok(match out.status {
        LpStatus::Optimal => out.point,
        _ => None,
    })
}

/// Decides the matrix alternatives.
pub fn gordan_matrix_decide(m: &FuzzyMatrix, settings: &Settings) -> Result<GordanVerdict> {
    let grid = levels(m, settings);
    let (epigraph_value, witness_y) = search_first(m, &grid, settings)?;
    let all_rows: Vec<usize> = (0..m.nrows()).collect();

    // Cuts are nested and x >= 0, so zero-membership at the core carries down
    // to every lower level; the core solution is then re-checked everywhere.
    let mut witness_x = None;
    let mut certificate = Vec::new();
    if let Some(x) = second_at(m, &all_rows, 1.0)? {
        let values = m.apply(&x)?;
        certificate = grid
            .levels()
            .iter()
            .map(|&rho| LevelEvidence {
                rho,
                rows: values.iter().map(|f| f.at(rho)).collect(),
            })
            .collect();
        let ok = certificate
            .iter()
            .all(|ev| ev.rows.iter().all(|c| c.contains_zero(settings.tol)));
        if ok {
            witness_x = Some(x);
        } else {
            warn!("alternative II candidate {x:?} failed re-verification");
            certificate.clear();
        }
    }
    let first_holds = witness_y.is_some();
    let second_holds = witness_x.is_some();
    if first_holds && second_holds {
        warn!("both alternatives verified; reporting alternative II");
    }

    let which = if second_holds {
        Alternative::AlternativeII
    } else if first_holds {
        Alternative::AlternativeI
    } else {
        Alternative::NeitherDetected
    };
    let failure = if second_holds {
        None
    } else {
        Some(locate_failure(m, &grid, &all_rows)?)
    };
    debug!("gordan verdict {which:?}, epigraph value {epigraph_value:e}");
    Ok(GordanVerdict {
        which,
        first_holds,
        second_holds,
        epigraph_value,
        witness_y: if which == Alternative::AlternativeI { witness_y } else { None },
        witness_x,
        certificate,
        failure,
    })
}

fn locate_failure(m: &FuzzyMatrix, grid: &LevelGrid, rows: &[usize]) -> Result<Failure> {
    // Feasibility only shrinks as the level grows, so find the lowest infeasible level.
    let mut level = 1.0;
    for &rho in grid.levels() {
        if second_at(m, rows, rho)?.is_none() {
            level = rho;
            break;
        }
    }
    let mut component = None;
    for &i in rows {
        if second_at(m, &[i], level)?.is_none() {
            component = Some(i);
            break;
        }
    }
    Ok(Failure { level, component })
}

/// Decides the vector alternatives: `Σ y_j m_j ≺ 0̃` for some `y`, or every
/// component contains zero at every level.
pub fn gordan_vector_decide(u: &FuzzyVector, settings: &Settings) -> Result<GordanVerdict> {
    gordan_matrix_decide(&FuzzyMatrix::column_of(u), settings)
}

/// Outcome of the brute-force scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExclusivityReport {
    /// A grid `y` with `Mᵀy ≺ 0̃` was found.
    pub first_found: bool,
    /// A simplex-grid `x` with `0 ∈ (Mx)_i` everywhere was found.
    pub second_found: bool,
    pub witness_y: Option<Vec<f64>>,
    pub witness_x: Option<Vec<f64>>,
}

impl ExclusivityReport {
    pub fn both_hold(&self) -> bool {
        self.first_found && self.second_found
    }

    pub fn both_fail(&self) -> bool {
        !self.first_found && !self.second_found
    }
}

/// Largest `s · n` accepted by [`gordan_exclusivity_oracle`].
pub const ORACLE_MAX_ENTRIES: usize = 6;

/// Exhaustive scan of `y ∈ {−1, …, 1}ˢ` (with `steps` points per axis) and of
/// the simplex grid with denominator `steps − 1`, using direct endpoint
/// arithmetic on `grid` plus breakpoints. Independent of the LP kernel.
pub fn gordan_exclusivity_oracle(m: &FuzzyMatrix, grid: &LevelGrid, steps: usize) -> Result<ExclusivityReport> {
    let (s, n) = (m.nrows(), m.ncols());
    if s * n > ORACLE_MAX_ENTRIES {
        return Err(Error::InvalidArgument(format!(
            "oracle instance too large: {s} x {n} exceeds {ORACLE_MAX_ENTRIES} entries"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument("oracle needs at least 2 steps per axis".into()));
    }
    let levels = grid.with_levels(&m.kinks());
    let cuts: Vec<Vec<Vec<Interval>>> = levels
        .levels()
        .iter()
        .map(|&r| (0..s).map(|i| (0..n).map(|j| m.get(i, j).cut_at(r)).collect()).collect())
        .collect();
    let combo = |w: &[f64], entries: &mut dyn Iterator<Item = Interval>| -> Interval {
        w.iter()
            .zip(entries)
            .fold(Interval::zero(), |acc, (&wi, c)| acc.add(&c.scale(wi)))
    };

    let axis: Vec<f64> = (0..steps).map(|k| -1.0 + 2.0 * k as f64 / (steps - 1) as f64).collect();
    let mut witness_y = None;
    for_each_index(s, steps, |idx| {
        let y: Vec<f64> = idx.iter().map(|&k| axis[k]).collect();
        let strict = cuts.iter().all(|lv| {
            (0..n).all(|j| {
                let c = combo(&y, &mut (0..s).map(|i| lv[i][j]));
                c.hi() < 0.0
            })
        });
        if strict {
            witness_y = Some(y);
        }
        strict
    });

    let d = steps - 1;
    let mut witness_x = None;
    for_each_index(n, steps, |idx| {
        if idx.iter().sum::<usize>() != d {
            return false;
        }
        let x: Vec<f64> = idx.iter().map(|&k| k as f64 / d as f64).collect();
        let ok = cuts
            .iter()
            .all(|lv| (0..s).all(|i| combo(&x, &mut lv[i].iter().copied()).contains_zero(0.0)));
        if ok {
            witness_x = Some(x);
        }
        ok
    });

    Ok(ExclusivityReport {
        first_found: witness_y.is_some(),
        second_found: witness_x.is_some(),
        witness_y,
        witness_x,
    })
}

/// Calls `f` on every index vector in `{0..steps}^dim` until it returns true.
fn for_each_index(dim: usize, steps: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut idx = vec![0usize; dim];
    loop {
        if f(&idx) {
            return;
        }
        let mut k = 0;
        loop {
            if k == dim {
                return;
            }
            idx[k] += 1;
            if idx[k] < steps {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyNumber;

    fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
        FuzzyNumber::tri(a, b, c)
    }

    fn vector(ms: Vec<FuzzyNumber>) -> FuzzyVector {
        FuzzyVector::new(ms).unwrap()
    }

    #[test]
    fn positive_number_has_negative_witness() {
        let v = gordan_vector_decide(&vector(vec![tri(1.0, 2.0, 3.0)]), &Settings::default()).unwrap();
        assert_eq!(v.which, Alternative::AlternativeI);
        assert_eq!(v.witness_y.as_deref(), Some(&[-1.0][..]));
    }

    #[test]
    fn symmetric_numbers_contain_zero() {
        let v = gordan_vector_decide(&vector(vec![tri(-1.0, 0.0, 1.0), tri(-2.0, 0.0, 2.0)]), &Settings::default())
            .unwrap();
        assert_eq!(v.which, Alternative::AlternativeII);
        assert!(!v.first_holds);
        assert!(v.certificate.iter().all(|ev| ev.rows.iter().all(|c| c.contains_zero(0.0))));
    }

    #[test]
    fn straddling_support_with_positive_core_is_neither() {
        let u = vector(vec![tri(-1.0, 1.0, 2.0)]);
        let v = gordan_vector_decide(&u, &Settings::default()).unwrap();
        assert_eq!(v.which, Alternative::NeitherDetected);
        let f = v.failure.unwrap();
        assert_eq!(f.component, Some(0));
        assert!(f.level > 0.0);
        let o = gordan_exclusivity_oracle(&FuzzyMatrix::column_of(&u), &LevelGrid::default(), 21).unwrap();
        assert!(o.both_fail());
    }

    #[test]
    fn zero_vector_is_second_only() {
        let u = vector(vec![FuzzyNumber::zero()]);
        let v = gordan_vector_decide(&u, &Settings::default()).unwrap();
        assert_eq!(v.which, Alternative::AlternativeII);
        let o = gordan_exclusivity_oracle(&FuzzyMatrix::column_of(&u), &LevelGrid::default(), 11).unwrap();
        assert!(o.second_found && !o.first_found);
    }

    #[test]
    fn one_by_one_matrices() {
        let s = Settings::default();
        let m = FuzzyMatrix::from_rows(vec![vec![tri(1.0, 2.0, 3.0)]]).unwrap();
        let v = gordan_matrix_decide(&m, &s).unwrap();
        assert_eq!(v.which, Alternative::AlternativeI);
        assert_eq!(v.witness_y.as_deref(), Some(&[-1.0][..]));
        let m = FuzzyMatrix::from_rows(vec![vec![tri(-1.0, 0.0, 1.0)]]).unwrap();
        let v = gordan_matrix_decide(&m, &s).unwrap();
        assert_eq!(v.which, Alternative::AlternativeII);
        assert_eq!(v.witness_x.as_deref(), Some(&[1.0][..]));
    }

    #[test]
    fn fritz_john_gradient_matrix() {
        // Columns ∇H(2) = [−16+8ρ, 7−15ρ] and ∇Y₁(2) = [−4+9ρ, 7−2ρ] as triangular numbers.
        let m = FuzzyMatrix::from_rows(vec![vec![tri(-16.0, -8.0, 7.0), tri(-4.0, 5.0, 7.0)]]).unwrap();
        let v = gordan_matrix_decide(&m, &Settings::default()).unwrap();
        assert_eq!(v.which, Alternative::AlternativeII);
        assert!(!v.first_holds);
        let x = v.witness_x.unwrap();
        assert!((x[0] - 5.0 / 13.0).abs() < 1e-9 && (x[1] - 8.0 / 13.0).abs() < 1e-9);
    }
}
