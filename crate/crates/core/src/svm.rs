//! Hard-margin support vector machine for fuzzy data.
//!
//! The model is `min ½‖λ‖²` subject to `1̃ ⊖_gH y_i(λᵀU_i ⊖_gH ℓ) ⪯ 0̃`. Support
//! points satisfy their constraint with zero-membership at every level, which
//! turns the bias into a level-indexed window `B_i(ρ)`; the bias set is the
//! intersection of those windows up to the highest level where it is nonempty.

use log::debug;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{weighted_sum, CutFamily, FuzzyVector, Interval, LevelGrid};
use crate::lp::{lp_solve, Bounds, Constraint, LinearProgram};
use crate::settings::Settings;

/// Default cap on candidate support-set size.
pub const DEFAULT_MAX_SUPPORT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn sign(self) -> f64 {
        match self {
            Label::Negative => -1.0,
            Label::Positive => 1.0,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Negative => Label::Positive,
            Label::Positive => Label::Negative,
        }
    }
}

impl TryFrom<i64> for Label {
    type Error = String;

    fn try_from(v: i64) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Label::Positive),
            -1 => Ok(Label::Negative),
            _ => Err(format!("label must be 1 or -1, got {v}")),
        }
    }
}

impl From<Label> for i64 {
    fn from(l: Label) -> i64 {
        l.sign() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub coords: FuzzyVector,
    pub label: Label,
}

/// Fuzzy points of a common dimension carrying both labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DatasetRepr", into = "DatasetRepr")]
pub struct FuzzyDataset {
    points: Vec<LabeledPoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetRepr {
    pub points: Vec<LabeledPoint>,
}

impl TryFrom<DatasetRepr> for FuzzyDataset {
    type Error = Error;

    fn try_from(r: DatasetRepr) -> Result<Self> {
        FuzzyDataset::new(r.points)
    }
}

impl From<FuzzyDataset> for DatasetRepr {
    fn from(d: FuzzyDataset) -> Self {
        DatasetRepr { points: d.points }
    }
}

impl FuzzyDataset {
    pub fn new(points: Vec<LabeledPoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidDataset("no points".into()));
        };
        let n = first.coords.len();
        if let Some(i) = points.iter().position(|p| p.coords.len() != n) {
            return Err(Error::InvalidDataset(format!(
                "point {i} has dimension {}, expected {n}",
                points[i].coords.len()
            )));
        }
        for l in [Label::Positive, Label::Negative] {
            if !points.iter().any(|p| p.label == l) {
                return Err(Error::InvalidDataset("both labels must be present".into()));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].coords.len()
    }

    fn y(&self, i: usize) -> f64 {
        self.points[i].label.sign()
    }

    /// The same points with every label flipped.
    pub fn flipped(&self) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| LabeledPoint {
                    coords: p.coords.clone(),
                    label: p.label.flipped(),
                })
                .collect(),
        }
    }

    fn check_lambda(&self, lambda: &[f64]) -> Result<()> {
        if lambda.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "normal vector has dimension {}, dataset has {}",
                lambda.len(),
                self.dim()
            )))
        }
    }
}

/// Normal vector pinned by stationarity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryLambda {
    pub lambda: Vec<f64>,
    /// Coordinates whose admissible set was a nondegenerate interval; the
    /// midpoint was chosen.
    pub underdetermined: Vec<usize>,
}

/// Solves `0 ∈ λ + Σ(−κ_i y_i)U_i` at every level.
///
/// Per coordinate the admissible set is the intersection over levels of the
/// cuts of `Σ κ_i y_i U_i`, which is its core.
pub fn svm_stationary_lambda(d: &FuzzyDataset, kappa: &[f64], settings: &Settings) -> Result<StationaryLambda> {
    if kappa.len() != d.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} multipliers, got {}",
            d.len(),
            kappa.len()
        )));
    }
    if kappa.iter().any(|&k| !(k >= 0.0)) {
        return Err(Error::InvalidArgument("multipliers must be nonnegative".into()));
    }
    let balance: f64 = kappa.iter().enumerate().map(|(i, k)| k * d.y(i)).sum();
    let scale = kappa.iter().sum::<f64>().max(1.0);
    if balance.abs() > settings.tol * scale {
        return Err(Error::InvalidArgument(format!("Σκ_i y_i = {balance:e} is not zero")));
    }
    let mut lambda = Vec::with_capacity(d.dim());
    let mut underdetermined = Vec::new();
    for c in 0..d.dim() {
        let fam = weighted_sum((0..d.len()).map(|i| (kappa[i] * d.y(i), d.points[i].coords.get(c))));
        let core = fam.at(1.0);
        if core.width() > settings.tol {
            underdetermined.push(c);
        }
        let v = core.midpoint() + 0.0;
        let levels = settings.grid.union(fam.grid());
        if let Some(&r) = levels.levels().iter().find(|&&r| !fam.at(r).contains(v, settings.tol)) {
            return Err(Error::EmptyIntersection(format!("coordinate {c} fails at level {r}")));
        }
        lambda.push(v);
    }
    Ok(StationaryLambda { lambda, underdetermined })
}

/// Level-wise intersection of the support points' bias windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasSet {
    pub levels: LevelGrid,
    /// `None` above `rho_max`.
    pub intervals: Vec<Option<Interval>>,
    pub rho_max: f64,
}

impl BiasSet {
    /// The interval at the top level `rho_max`.
    pub fn top(&self) -> Interval {
        self.at(self.rho_max).expect("bias set is nonempty at rho_max")
    }

    /// Interval at `rho` by interpolation, `None` above `rho_max`.
    pub fn at(&self, rho: f64) -> Option<Interval> {
        if rho > self.rho_max {
            return None;
        }
        let lv = self.levels.levels();
        let k = lv.iter().position(|&l| l >= rho)?;
        let exact = self.intervals[k];
        if lv[k] == rho || k == 0 {
            return exact;
        }
        let (a, b) = (self.intervals[k - 1]?, exact?);
        let t = (rho - lv[k - 1]) / (lv[k] - lv[k - 1]);
        Some(Interval::spanning((1.0 - t) * a.lo() + t * b.lo(), ((1.0 - t) * a.hi() + t * b.hi()).max((1.0 - t) * a.lo() + t * b.lo())))
    }

    /// CSV rows `rho,lo,hi` for the nonempty levels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,lo,hi\n");
        for (r, c) in self.levels.levels().iter().zip(&self.intervals) {
            if let Some(c) = c {
                out.push_str(&format!("{},{},{}\n", r, c.lo(), c.hi()));
            }
        }
        out
    }

    /// The bias set for flipped labels: `ℓ ↦ −ℓ`.
    pub fn reflected(&self) -> BiasSet {
        BiasSet {
            levels: self.levels.clone(),
            intervals: self.intervals.iter().map(|c| c.map(|c| c.scale(-1.0))).collect(),
            rho_max: self.rho_max,
        }
    }
}

/// Bias window `{ℓ : 1 ∈ y_i(λᵀU_i − ℓ)}` of point `i`, i.e. `λᵀU_i − y_i`.
fn bias_window(d: &FuzzyDataset, lambda: &[f64], i: usize) -> Result<CutFamily> {
    let w = d.points[i].coords.dot(lambda)?;
    let shift = CutFamily::constant(Interval::point(-d.y(i)));
    Ok(w.add(&shift))
}

/// Levels where the affine pieces of two families cross inside a segment.
fn crossings(fams: &[CutFamily], grid: &LevelGrid, pick: fn(&Interval) -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    for w in grid.levels().windows(2) {
        let (r0, r1) = (w[0], w[1]);
        for a in 0..fams.len() {
            for b in a + 1..fams.len() {
                let d0 = pick(&fams[a].at(r0)) - pick(&fams[b].at(r0));
                let d1 = pick(&fams[a].at(r1)) - pick(&fams[b].at(r1));
                if (d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0) {
                    out.push(r0 + (r1 - r0) * d0 / (d0 - d1));
                }
            }
        }
    }
    out
}

/// Intersects the bias windows of `support`, with `rho_max` located exactly.
pub fn svm_bias_set(d: &FuzzyDataset, lambda: &[f64], support: &[usize], settings: &Settings) -> Result<BiasSet> {
    d.check_lambda(lambda)?;
    if support.is_empty() {
        return Err(Error::InvalidArgument("support set is empty".into()));
    }
    if let Some(&i) = support.iter().find(|&&i| i >= d.len()) {
        return Err(Error::InvalidArgument(format!("support index {i} out of range")));
    }
    let windows = support
        .iter()
        .map(|&i| bias_window(d, lambda, i))
        .collect::<Result<Vec<_>>>()?;
    let mut grid = windows.iter().fold(settings.grid.clone(), |g, w| g.union(w.grid()));
    // Between these levels max(lo) and min(hi) are affine, so the gap is too.
    let extra: Vec<f64> = crossings(&windows, &grid, Interval::lo)
        .into_iter()
        .chain(crossings(&windows, &grid, Interval::hi))
        .collect();
    grid = grid.with_levels(&extra);
    let bounds = |r: f64| {
        windows.iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(lo, hi), w| {
            let c = w.at(r);
            (lo.max(c.lo()), hi.min(c.hi()))
        })
    };
    let gap = |r: f64| {
        let (lo, hi) = bounds(r);
        hi - lo
    };
    let tol = settings.tol;
    let lv = grid.levels();
    if gap(0.0) < -tol {
        return Err(Error::EmptyBias);
    }
    let rho_max = match lv.iter().position(|&r| gap(r) < -tol) {
        None => 1.0,
        Some(k) => {
            let (ra, rb) = (lv[k - 1], lv[k]);
            let (ga, gb) = (gap(ra), gap(rb));
            if ga <= 0.0 {
                ra
            } else {
                ra + (rb - ra) * ga / (ga - gb)
            }
        }
    };
    let levels = grid.with_levels(&[rho_max]);
    let intervals = levels
        .levels()
        .iter()
        .map(|&r| {
            if r > rho_max {
                return None;
            }
            let (lo, hi) = bounds(r);
            if lo <= hi {
                Some(Interval::spanning(lo, hi))
            } else {
                Some(Interval::point(0.5 * (lo + hi)))
            }
        })
        .collect();
    debug!("bias set for support {support:?}: rho_max = {rho_max}");
    Ok(BiasSet {
        levels,
        intervals,
        rho_max,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointMargin {
    pub index: usize,
    /// `y_i(λᵀcore(U_i) − ℓ)` using core midpoints.
    pub core_margin: f64,
    /// Smallest level from which the whole cut clears the margin; `None` when
    /// even the core fails.
    pub satisfaction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub points: Vec<PointMargin>,
    pub min_core_margin: f64,
}

impl MarginReport {
    pub fn cores_clear(&self, tol: f64) -> bool {
        self.min_core_margin >= 1.0 - tol
    }
}

pub fn svm_margin_report(d: &FuzzyDataset, lambda: &[f64], ell: f64, settings: &Settings) -> Result<MarginReport> {
    d.check_lambda(lambda)?;
    let mut points = Vec::with_capacity(d.len());
    for (i, p) in d.points.iter().enumerate() {
        let y = d.y(i);
        let core: f64 = lambda.iter().zip(p.coords.core_midpoints()).map(|(l, c)| l * c).sum();
        let w = p.coords.dot(lambda)?;
        // Smallest endpoint of y(λᵀU − ℓ); nondecreasing in the level.
        let low = |r: f64| {
            let c = w.at(r);
            if y > 0.0 {
                c.lo() - ell
            } else {
                ell - c.hi()
            }
        };
        let lv = settings.grid.union(w.grid());
        let lv = lv.levels();
        let satisfaction = match lv.iter().position(|&r| low(r) >= 1.0 - settings.tol) {
            None => None,
            Some(0) => Some(0.0),
            Some(k) => {
                let (ra, rb) = (lv[k - 1], lv[k]);
                let (ma, mb) = (low(ra) - 1.0, low(rb) - 1.0);
                Some(if mb <= 0.0 { rb } else { ra + (rb - ra) * ma / (ma - mb) })
            }
        };
        points.push(PointMargin {
            index: i,
            core_margin: y * (core - ell),
            satisfaction,
        });
    }
    let min_core_margin = points.iter().map(|p| p.core_margin).fold(f64::INFINITY, f64::min);
    Ok(MarginReport {
        points,
        min_core_margin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmCaps {
    pub max_support: usize,
}

impl Default for SvmCaps {
    fn default() -> Self {
        Self {
            max_support: DEFAULT_MAX_SUPPORT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmSolution {
    pub lambda: Vec<f64>,
    /// One multiplier per data point.
    pub kappas: Vec<f64>,
    pub support_indices: Vec<usize>,
    pub bias: BiasSet,
    pub ell_star: f64,
    pub objective: f64,
    pub margin_report: MarginReport,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub underdetermined: Vec<usize>,
    pub candidates_checked: usize,
}

/// All subsets of `0..n` of size `2..=max` containing both labels, by size then lexicographically.
fn candidate_sets(d: &FuzzyDataset, max: usize) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut out = Vec::new();
    for k in 2..=max.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let pos = idx.iter().filter(|&&i| d.y(i) > 0.0).count();
            if pos > 0 && pos < k {
                out.push(idx.clone());
            }
            // Next combination.
            let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

/// Multipliers on `support` making every core margin in the set exactly 1:
/// `Σ_j κ_j y_j (c_j·c_i) − ℓ = y_i`, `Σ κ_j y_j = 0`, `κ >= 0`, minimal `Σκ`.
fn support_multipliers(d: &FuzzyDataset, cores: &[Vec<f64>], support: &[usize]) -> Result<Option<Vec<f64>>> {
    let k = support.len();
    let nv = k + 1;
    let mut obj = vec![1.0; nv];
    obj[k] = 0.0;
    let mut lp = LinearProgram::new(nv).minimize(obj);
    for v in 0..k {
        lp = lp.bound(v, Bounds::NONNEG);
    }
    for &i in support {
        let mut row: Vec<f64> = support
            .iter()
            .map(|&j| d.y(j) * cores[j].iter().zip(&cores[i]).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        row.push(-1.0);
        lp.push(Constraint::eq(row, d.y(i)));
    }
    let mut balance: Vec<f64> = support.iter().map(|&j| d.y(j)).collect();
    balance.push(0.0);
    lp.push(Constraint::eq(balance, 0.0));
    Ok(lp_solve(&lp)?.point.map(|p| p[..k].to_vec()))
}

fn evaluate_candidate(
    d: &FuzzyDataset,
    cores: &[Vec<f64>],
    support: &[usize],
    settings: &Settings,
) -> Result<Option<SvmSolution>> {
    let Some(ks) = support_multipliers(d, cores, support)? else {
        return Ok(None);
    };
    let mut kappas = vec![0.0; d.len()];
    for (&i, &k) in support.iter().zip(&ks) {
        kappas[i] = k;
    }
    let stationary = match svm_stationary_lambda(d, &kappas, settings) {
        Ok(s) => s,
        Err(Error::EmptyIntersection(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let bias = match svm_bias_set(d, &stationary.lambda, support, settings) {
        Ok(b) => b,
        Err(Error::EmptyBias) => return Ok(None),
        Err(e) => return Err(e),
    };
    let ell_star = bias.top().midpoint() + 0.0;
    let margin_report = svm_margin_report(d, &stationary.lambda, ell_star, settings)?;
    if !margin_report.cores_clear(settings.tol) {
        return Ok(None);
    }
    let objective = 0.5 * stationary.lambda.iter().map(|v| v * v).sum::<f64>();
    Ok(Some(SvmSolution {
        lambda: stationary.lambda,
        kappas,
        support_indices: support.to_vec(),
        bias,
        ell_star,
        objective,
        margin_report,
        underdetermined: stationary.underdetermined,
        candidates_checked: 0,
    }))
}

/// Enumerates candidate support sets and returns the accepted candidate with
/// the smallest `½‖λ‖²`; ties go to the earliest candidate.
pub fn svm_solve(d: &FuzzyDataset, caps: SvmCaps, settings: &Settings) -> Result<SvmSolution> {
    if caps.max_support < 2 {
        return Err(Error::InvalidArgument("max_support must be at least 2".into()));
    }
    let cores: Vec<Vec<f64>> = d.points.iter().map(|p| p.coords.core_midpoints()).collect();
    let candidates = candidate_sets(d, caps.max_support);
    let results: Vec<Result<Option<SvmSolution>>> = candidates
        .par_iter()
        .map(|s| evaluate_candidate(d, &cores, s, settings))
        .collect();
    let mut best: Option<SvmSolution> = None;
    for r in results {
        if let Some(sol) = r? {
            if best.as_ref().map_or(true, |b| sol.objective < b.objective - 1e-12 * b.objective.max(1.0)) {
                best = Some(sol);
            }
        }
    }
    let mut sol = best.ok_or(Error::NoSeparator)?;
    sol.candidates_checked = candidates.len();
    Ok(sol)
}

/// Independent re-check of a solution's optimality system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmCheck {
    pub balance: f64,
    pub stationarity: bool,
    pub slackness: bool,
    pub margins: bool,
    pub objective_consistent: bool,
}

impl SvmCheck {
    pub fn pass(&self, tol: f64) -> bool {
        self.balance.abs() <= tol && self.stationarity && self.slackness && self.margins && self.objective_consistent
    }
}

pub fn svm_verify(d: &FuzzyDataset, sol: &SvmSolution, settings: &Settings) -> Result<SvmCheck> {
    d.check_lambda(&sol.lambda)?;
    let tol = settings.tol;
    let balance: f64 = sol.kappas.iter().enumerate().map(|(i, k)| k * d.y(i)).sum();
    let mut stationarity = true;
    for c in 0..d.dim() {
        let fam = weighted_sum((0..d.len()).map(|i| (sol.kappas[i] * d.y(i), d.points[i].coords.get(c))));
        let lv = settings.grid.union(fam.grid());
        stationarity &= lv.levels().iter().all(|&r| fam.at(r).contains(sol.lambda[c], tol));
    }
    let mut slackness = true;
    for (i, &k) in sol.kappas.iter().enumerate() {
        if k > tol {
            slackness &= sol.support_indices.contains(&i);
            let w = bias_window(d, &sol.lambda, i)?;
            let lv = settings.grid.union(w.grid()).with_levels(&[sol.bias.rho_max]);
            slackness &= lv
                .levels()
                .iter()
                .filter(|&&r| r <= sol.bias.rho_max)
                .all(|&r| w.at(r).contains(sol.ell_star, tol));
        }
    }
    let margins = svm_margin_report(d, &sol.lambda, sol.ell_star, settings)?.cores_clear(tol);
    let objective = 0.5 * sol.lambda.iter().map(|v| v * v).sum::<f64>();
    Ok(SvmCheck {
        balance,
        stationarity,
        slackness,
        margins,
        objective_consistent: (objective - sol.objective).abs() <= tol * objective.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyNumber;

    fn point(coords: &[(f64, f64, f64)], label: Label) -> LabeledPoint {
        LabeledPoint {
            coords: FuzzyVector::new(coords.iter().map(|&(a, b, c)| FuzzyNumber::tri(a, b, c)).collect()).unwrap(),
            label,
        }
    }

    fn crisp_pair() -> FuzzyDataset {
        FuzzyDataset::new(vec![
            point(&[(-1.0, -1.0, -1.0)], Label::Negative),
            point(&[(1.0, 1.0, 1.0)], Label::Positive),
        ])
        .unwrap()
    }

    #[test]
    fn classic_two_point_answer() {
        let s = Settings::default();
        let sol = svm_solve(&crisp_pair(), SvmCaps::default(), &s).unwrap();
        assert!((sol.lambda[0] - 1.0).abs() < 1e-12);
        assert!(sol.ell_star.abs() < 1e-12);
        assert!((sol.objective - 0.5).abs() < 1e-12);
        assert!(svm_verify(&crisp_pair(), &sol, &s).unwrap().pass(1e-9));
        let b = sol.bias.top();
        assert_eq!(b.width(), 0.0);
    }

    #[test]
    fn dataset_validation() {
        assert!(FuzzyDataset::new(vec![]).is_err());
        let one_class = vec![point(&[(0.0, 0.0, 0.0)], Label::Positive)];
        assert!(matches!(FuzzyDataset::new(one_class), Err(Error::InvalidDataset(_))));
        let ragged = vec![
            point(&[(0.0, 0.0, 0.0)], Label::Positive),
            point(&[(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)], Label::Negative),
        ];
        assert!(FuzzyDataset::new(ragged).is_err());
        assert!(serde_json::from_str::<Label>("0").is_err());
    }

    #[test]
    fn zero_multipliers_give_zero_normal() {
        let s = Settings::default();
        let l = svm_stationary_lambda(&crisp_pair(), &[0.0, 0.0], &s).unwrap();
        assert_eq!(l.lambda, vec![0.0]);
        assert!(svm_stationary_lambda(&crisp_pair(), &[1.0, 0.0], &s).is_err());
    }

    #[test]
    fn disjoint_windows_have_no_bias() {
        let s = Settings::default();
        let d = crisp_pair();
        // λ = 5: windows {−5 + 1} and {5 − 1} are disjoint.
        assert!(matches!(svm_bias_set(&d, &[5.0], &[0, 1], &s), Err(Error::EmptyBias)));
    }

    #[test]
    fn margin_with_large_offset() {
        let s = Settings::default();
        let r = svm_margin_report(&crisp_pair(), &[1.0], 10.0, &s).unwrap();
        assert!(!r.cores_clear(1e-9));
        assert_eq!(r.points[1].satisfaction, None);
        let ok = svm_margin_report(&crisp_pair(), &[1.0], 0.0, &s).unwrap();
        assert_eq!(ok.points[0].satisfaction, Some(0.0));
    }

    #[test]
    fn candidate_order() {
        let d = FuzzyDataset::new(vec![
            point(&[(0.0, 0.0, 0.0)], Label::Positive),
            point(&[(1.0, 1.0, 1.0)], Label::Negative),
            point(&[(2.0, 2.0, 2.0)], Label::Positive),
        ])
        .unwrap();
        let c = candidate_sets(&d, 3);
        assert_eq!(c, vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]]);
    }
}
