//! Dense tableau simplex on `min cᵀy, A y = b, y >= 0` with `b >= 0`.

use log::trace;

/// Pivot and reduced-cost threshold.
const EPS: f64 = 1e-10;

pub(crate) enum Phase {
    Optimal,
    Unbounded,
    IterationLimit,
}

pub(crate) struct Tableau {
    /// `m` rows of `ncols` coefficients followed by the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
    iterations: usize,
    max_iterations: usize,
}

impl Tableau {
    pub(crate) fn new(rows: Vec<Vec<f64>>, basis: Vec<usize>, ncols: usize, max_iterations: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols + 1));
        debug_assert_eq!(rows.len(), basis.len());
        Self {
            rows,
            basis,
            ncols,
            iterations: 0,
            max_iterations,
        }
    }

    pub(crate) fn basis(&self) -> &[usize] {
        &self.basis
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.ncols]
    }

    /// Current value of every column variable.
    pub(crate) fn solution(&self) -> Vec<f64> {
        let mut y = vec![0.0; self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            y[b] = self.rhs(i).max(0.0);
        }
        y
    }

    pub(crate) fn objective(&self, cost: &[f64]) -> f64 {
        self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rhs(i)).sum()
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut r = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (rj, a) in r.iter_mut().zip(&self.rows[i]) {
                    *rj -= cb * a;
                }
            }
        }
        r
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let p = self.rows[pr][pc];
        for v in self.rows[pr].iter_mut() {
            *v /= p;
        }
        self.rows[pr][pc] = 1.0;
        let pivot_row = self.rows[pr].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pr {
                continue;
            }
            let f = row[pc];
            if f != 0.0 {
                for (v, a) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * a;
                }
                row[pc] = 0.0;
            }
        }
        self.basis[pr] = pc;
    }

    /// Minimises `cost` over the columns allowed by `allowed`, Bland's rule.
    pub(crate) fn optimize(&mut self, cost: &[f64], allowed: &dyn Fn(usize) -> bool) -> Phase {
        loop {
            if self.iterations >= self.max_iterations {
                return Phase::IterationLimit;
            }
            let rc = self.reduced_costs(cost);
            let Some(enter) = (0..self.ncols).find(|&j| allowed(j) && rc[j] < -EPS) else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][enter];
                if a > EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            if ratio < best - EPS || (ratio <= best + EPS && self.basis[i] < self.basis[k]) {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            let Some((leave, _)) = leave else {
                return Phase::Unbounded;
            };
            trace!("pivot {}: column {enter} enters, row {leave} (basis {}) leaves", self.iterations, self.basis[leave]);
            self.pivot(leave, enter);
            self.iterations += 1;
            if log::log_enabled!(log::Level::Trace) {
                for (i, row) in self.rows.iter().enumerate() {
                    trace!("  [{}] {:?}", self.basis[i], row);
                }
            }
        }
    }

    /// Pivots basic columns rejected by `keep` out of the basis where possible
    /// and drops the rows where it is not (they are redundant).
    pub(crate) fn expel(&mut self, keep: &dyn Fn(usize) -> bool) {
        let mut i = 0;
        while i < self.rows.len() {
            if keep(self.basis[i]) {
                i += 1;
                continue;
            }
            let col = (0..self.ncols)
                .filter(|&j| keep(j))
                .find(|&j| self.rows[i][j].abs() > 1e-9);
            match col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    trace!("dropping redundant row {i}");
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
