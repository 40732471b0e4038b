use serde::{Deserialize, Serialize};

use super::{FuzzyError, FuzzyNumber, Interval, LevelGrid};

/// Anything that yields an interval at every membership level.
///
/// Endpoint functions are affine between consecutive `kinks`, so evaluating a
/// check at the kinks (plus any grid) is exact for the whole of `[0, 1]`.
pub trait Cuts {
    /// Interval at `rho`; `rho` must already lie in `[0, 1]`.
    fn cut_at(&self, rho: f64) -> Interval;

    /// Levels where the endpoint functions may change slope. Always contains 0 and 1.
    fn kinks(&self) -> Vec<f64>;
}

/// Evaluation levels for a set of operands: `grid` plus every operand kink.
pub fn evaluation_levels(grid: &LevelGrid, operands: &[&dyn Cuts]) -> LevelGrid {
    operands
        .iter()
        .fold(grid.clone(), |g, c| g.with_levels(&c.kinks()))
}

/// A level-indexed family of intervals with no nestedness requirement.
///
/// Between grid levels the endpoints are interpolated linearly, so a family
/// built from piecewise-affine data represents it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutFamily {
    levels: LevelGrid,
    cuts: Vec<Interval>,
}

impl CutFamily {
    pub fn new(grid: LevelGrid, cuts: Vec<Interval>) -> Result<Self, FuzzyError> {
        if grid.len() != cuts.len() {
            return Err(FuzzyError::LengthMismatch {
                levels: grid.len(),
                cuts: cuts.len(),
            });
        }
        Ok(Self { levels: grid, cuts })
    }

    pub fn from_fn(grid: LevelGrid, mut f: impl FnMut(f64) -> Interval) -> Self {
        let cuts = grid.levels().iter().map(|&r| f(r)).collect();
        Self { levels: grid, cuts }
    }

    /// Samples `source` on `grid` together with its own kinks.
    pub fn sample<C: Cuts + ?Sized>(source: &C, grid: &LevelGrid) -> Self {
        let g = grid.with_levels(&source.kinks());
        Self::from_fn(g, |r| source.cut_at(r))
    }

    /// Exact minimal representation of `source` (its kinks only).
    pub fn of<C: Cuts + ?Sized>(source: &C) -> Self {
        Self::sample(source, &LevelGrid::endpoints())
    }

    pub fn constant(value: Interval) -> Self {
        Self {
            levels: LevelGrid::endpoints(),
            cuts: vec![value, value],
        }
    }

    pub fn zero() -> Self {
        Self::constant(Interval::zero())
    }

    pub fn grid(&self) -> &LevelGrid {
        &self.levels
    }

    pub fn cuts(&self) -> &[Interval] {
        &self.cuts
    }

    /// `(level, interval)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, Interval)> + '_ {
        self.levels.levels().iter().copied().zip(self.cuts.iter().copied())
    }

    /// Interval at `rho`, linearly interpolated between stored levels.
    pub fn at(&self, rho: f64) -> Interval {
        let rho = rho.clamp(0.0, 1.0);
        let levels = self.levels.levels();
        let i = self.levels.segment(rho);
        let (l0, l1) = (levels[i], levels[i + 1]);
        if rho == l0 {
            return self.cuts[i];
        }
        if rho == l1 {
            return self.cuts[i + 1];
        }
        Interval::lerp(&self.cuts[i], &self.cuts[i + 1], (rho - l0) / (l1 - l0))
    }

    /// Resamples onto `grid` plus the existing levels. Lossless.
    pub fn refine(&self, grid: &LevelGrid) -> CutFamily {
        let g = self.levels.union(grid);
        if g == self.levels {
            return self.clone();
        }
        Self::from_fn(g, |r| self.at(r))
    }

    fn zip_with(&self, other: &CutFamily, f: impl Fn(&Interval, &Interval) -> Interval) -> CutFamily {
        let g = self.levels.union(&other.levels);
        CutFamily::from_fn(g, |r| f(&self.at(r), &other.at(r)))
    }

    pub fn add(&self, other: &CutFamily) -> CutFamily {
        self.zip_with(other, Interval::add)
    }

    pub fn scale(&self, theta: f64) -> CutFamily {
        CutFamily {
            levels: self.levels.clone(),
            cuts: self.cuts.iter().map(|c| c.scale(theta)).collect(),
        }
    }

    /// Level-wise gH-difference.
    ///
    /// The lower and upper endpoint differences are affine between levels; where
    /// they cross, the min/max selection switches, so the crossing level is added
    /// to keep the result exact.
    pub fn gh_sub(&self, other: &CutFamily) -> CutFamily {
        let base = self.levels.union(&other.levels);
        let diff = |r: f64| {
            let (a, b) = (self.at(r), other.at(r));
            (a.lo() - b.lo()) - (a.hi() - b.hi())
        };
        let levels = base.levels();
        let mut crossings = Vec::new();
        for w in levels.windows(2) {
            let (d0, d1) = (diff(w[0]), diff(w[1]));
            if (d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0) {
                crossings.push(w[0] + (w[1] - w[0]) * d0 / (d0 - d1));
            }
        }
        let g = base.with_levels(&crossings);
        CutFamily::from_fn(g, |r| self.at(r).gh_sub(&other.at(r)))
    }

    /// First level pair `(outer, inner)` where `cut(inner) ⊄ cut(outer)` beyond `tol`.
    pub fn nesting_violation(&self, tol: f64) -> Option<(f64, f64)> {
        let levels = self.levels.levels();
        (1..self.cuts.len())
            .find(|&i| !self.cuts[i - 1].encloses(&self.cuts[i], tol))
            .map(|i| (levels[i - 1], levels[i]))
    }

    pub fn is_nested(&self, tol: f64) -> bool {
        self.nesting_violation(tol).is_none()
    }

    /// Converts to a fuzzy number when the cuts are nested within `tol`.
    pub fn as_fuzzy_number(&self, tol: f64) -> Result<FuzzyNumber, FuzzyError> {
        if tol < 0.0 {
            return Err(FuzzyError::NegativeTolerance(tol));
        }
        if let Some((outer, inner)) = self.nesting_violation(tol) {
            return Err(FuzzyError::NotAFuzzyNumber { outer, inner });
        }
        // Clip tolerated overhang so the stored cuts are exactly nested.
        let mut cuts = self.cuts.clone();
        for i in 1..cuts.len() {
            let (p, c) = (cuts[i - 1], cuts[i]);
            let lo = c.lo().max(p.lo()).min(p.hi());
            let hi = c.hi().min(p.hi()).max(lo);
            cuts[i] = Interval::raw(lo, hi);
        }
        FuzzyNumber::sampled(self.levels.clone(), cuts)
    }

    /// CSV table with header `rho,lo,hi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,lo,hi\n");
        for (r, c) in self.iter() {
            out.push_str(&format!("{},{},{}\n", r, c.lo(), c.hi()));
        }
        out
    }
}

impl Cuts for CutFamily {
    fn cut_at(&self, rho: f64) -> Interval {
        self.at(rho)
    }

    fn kinks(&self) -> Vec<f64> {
        self.levels.levels().to_vec()
    }
}

impl Cuts for Interval {
    fn cut_at(&self, _rho: f64) -> Interval {
        *self
    }

    fn kinks(&self) -> Vec<f64> {
        vec![0.0, 1.0]
    }
}
