use serde::{Deserialize, Serialize};

use super::FuzzyError;

/// Levels closer than this are treated as the same level when grids are merged.
pub const LEVEL_EPS: f64 = 1e-12;

/// Number of uniform levels in the default grid (`0, 0.1, ..., 1`).
pub const DEFAULT_GRID_LEVELS: usize = 11;

/// A strictly increasing set of membership levels spanning `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LevelGrid {
    levels: Vec<f64>,
}

impl LevelGrid {
    pub fn new(levels: Vec<f64>) -> Result<Self, FuzzyError> {
        if levels.len() < 2 {
            return Err(FuzzyError::InvalidGrid("a grid needs at least the levels 0 and 1".into()));
        }
        if levels[0] != 0.0 || levels[levels.len() - 1] != 1.0 {
            return Err(FuzzyError::InvalidGrid("grid must start at 0 and end at 1".into()));
        }
        if levels.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(FuzzyError::InvalidGrid("levels must be strictly increasing".into()));
        }
        Ok(Self { levels })
    }

    /// `count` equally spaced levels, `count >= 2`.
    pub fn uniform(count: usize) -> Result<Self, FuzzyError> {
        if count < 2 {
            return Err(FuzzyError::InvalidGrid(format!("uniform grid needs >= 2 levels, got {count}")));
        }
        let n = (count - 1) as f64;
        let mut levels: Vec<f64> = (0..count).map(|i| i as f64 / n).collect();
        levels[count - 1] = 1.0;
        Ok(Self { levels })
    }

    /// The two-level grid `{0, 1}`.
    pub fn endpoints() -> Self {
        Self {
            levels: vec![0.0, 1.0],
        }
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Union of two grids.
    pub fn union(&self, other: &LevelGrid) -> LevelGrid {
        if self.levels == other.levels {
            return self.clone();
        }
        self.with_levels(&other.levels)
    }

    /// This grid with `extra` levels inserted (values outside `[0, 1]` are ignored).
    pub fn with_levels(&self, extra: &[f64]) -> LevelGrid {
        let mut all: Vec<f64> = self
            .levels
            .iter()
            .copied()
            .chain(extra.iter().copied().filter(|r| (0.0..=1.0).contains(r)))
            .collect();
        all.sort_by(|a, b| a.total_cmp(b));
        let mut merged: Vec<f64> = Vec::with_capacity(all.len());
        for r in all {
            match merged.last() {
                Some(&last) if r - last <= LEVEL_EPS => {}
                _ => merged.push(r),
            }
        }
        // Endpoints stay exact even if a nearby level was merged into them.
        merged[0] = 0.0;
        if let Some(last) = merged.last_mut() {
            if 1.0 - *last <= LEVEL_EPS {
                *last = 1.0;
            } else {
                merged.push(1.0);
            }
        }
        LevelGrid { levels: merged }
    }

    /// Index `i` such that `levels[i] <= rho <= levels[i + 1]`.
    pub(crate) fn segment(&self, rho: f64) -> usize {
        let n = self.levels.len();
        match self.levels.binary_search_by(|l| l.total_cmp(&rho)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }
}

impl Default for LevelGrid {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_LEVELS).expect("default grid is valid")
    }
}

impl TryFrom<Vec<f64>> for LevelGrid {
    type Error = FuzzyError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        LevelGrid::new(v)
    }
}

impl From<LevelGrid> for Vec<f64> {
    fn from(g: LevelGrid) -> Self {
        g.levels
    }
}
