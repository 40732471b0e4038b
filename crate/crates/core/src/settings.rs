use serde::{Deserialize, Serialize};

use crate::fuzzy::LevelGrid;

/// Default tolerance for order and zero-membership checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default tolerance for deciding that a constraint value equals `0̃`.
pub const DEFAULT_ACTIVE_TOL: f64 = 1e-8;

/// Numerical settings shared by the solvers and checkers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    /// Levels checked in addition to every operand's breakpoints.
    pub grid: LevelGrid,
    pub tol: f64,
    pub active_tol: f64,
}

impl Settings {
    pub fn with_grid(mut self, grid: LevelGrid) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            grid: LevelGrid::default(),
            tol: DEFAULT_TOL,
            active_tol: DEFAULT_ACTIVE_TOL,
        }
    }
}
