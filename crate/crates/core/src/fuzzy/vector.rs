use serde::{Deserialize, Serialize};

use super::{CutFamily, FuzzyError, FuzzyNumber};

/// A nonempty sequence of fuzzy numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FuzzyNumber>", into = "Vec<FuzzyNumber>")]
pub struct FuzzyVector {
    components: Vec<FuzzyNumber>,
}

impl FuzzyVector {
    pub fn new(components: Vec<FuzzyNumber>) -> Result<Self, FuzzyError> {
        if components.is_empty() {
            return Err(FuzzyError::Empty("fuzzy vector"));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[FuzzyNumber] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> &FuzzyNumber {
        &self.components[i]
    }

    /// Crisp vector of core midpoints.
    pub fn core_midpoints(&self) -> Vec<f64> {
        self.components.iter().map(|m| m.core().midpoint()).collect()
    }

    /// `Σ tau_j m_j`, exact on the union of the components' breakpoints.
    pub fn dot(&self, tau: &[f64]) -> Result<CutFamily, FuzzyError> {
        check_len(self.len(), tau.len())?;
        Ok(weighted_sum(tau.iter().copied().zip(&self.components)))
    }
}

/// `Σ w_k m_k` as an exact cut family.
pub fn weighted_sum<'a>(terms: impl IntoIterator<Item = (f64, &'a FuzzyNumber)>) -> CutFamily {
    terms
        .into_iter()
        .filter(|(w, _)| *w != 0.0)
        .fold(CutFamily::zero(), |acc, (w, m)| acc.add(&CutFamily::of(m).scale(w)))
}

impl TryFrom<Vec<FuzzyNumber>> for FuzzyVector {
    type Error = FuzzyError;

    fn try_from(v: Vec<FuzzyNumber>) -> Result<Self, Self::Error> {
        FuzzyVector::new(v)
    }
}

impl From<FuzzyVector> for Vec<FuzzyNumber> {
    fn from(v: FuzzyVector) -> Self {
        v.components
    }
}

/// An `s × n` matrix of fuzzy numbers, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<FuzzyNumber>>", into = "Vec<Vec<FuzzyNumber>>")]
pub struct FuzzyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FuzzyNumber>,
}

impl FuzzyMatrix {
    pub fn from_rows(rows: Vec<Vec<FuzzyNumber>>) -> Result<Self, FuzzyError> {
        let s = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if s == 0 || n == 0 {
            return Err(FuzzyError::Empty("fuzzy matrix"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(FuzzyError::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Ok(Self {
            rows: s,
            cols: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The matrix whose columns are the given vectors (all of equal length).
    pub fn from_columns(cols: &[FuzzyVector]) -> Result<Self, FuzzyError> {
        let s = cols.first().map_or(0, FuzzyVector::len);
        let rows = (0..s)
            .map(|i| {
                cols.iter()
                    .map(|c| {
                        if c.len() != s {
                            return Err(FuzzyError::DimensionMismatch {
                                expected: s,
                                found: c.len(),
                            });
                        }
                        Ok(c.get(i).clone())
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    /// An `n × 1` matrix holding `v` as its only column.
    pub fn column_of(v: &FuzzyVector) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            entries: v.components.clone(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FuzzyNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FuzzyNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Component `j` of `Mᵀ y`, i.e. `Σ_i y_i m_ij`.
    pub fn transpose_apply_col(&self, y: &[f64], j: usize) -> CutFamily {
        weighted_sum((0..self.rows).map(|i| (y[i], self.get(i, j))))
    }

    /// `Mᵀ y` as one cut family per column.
    pub fn transpose_apply(&self, y: &[f64]) -> Result<Vec<CutFamily>, FuzzyError> {
        check_len(self.rows, y.len())?;
        Ok((0..self.cols).map(|j| self.transpose_apply_col(y, j)).collect())
    }

    /// Row `i` of `M x`, i.e. `Σ_j x_j m_ij`.
    pub fn apply_row(&self, x: &[f64], i: usize) -> CutFamily {
        weighted_sum(x.iter().copied().zip(self.row(i)))
    }

    /// `M x` as one cut family per row.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<CutFamily>, FuzzyError> {
        check_len(self.cols, x.len())?;
        Ok((0..self.rows).map(|i| self.apply_row(x, i)).collect())
    }

    /// Breakpoint levels of every entry.
    pub fn kinks(&self) -> Vec<f64> {
        use super::Cuts;
        self.entries.iter().flat_map(|m| m.kinks()).collect()
    }
}

impl TryFrom<Vec<Vec<FuzzyNumber>>> for FuzzyMatrix {
    type Error = FuzzyError;

    fn try_from(rows: Vec<Vec<FuzzyNumber>>) -> Result<Self, Self::Error> {
        FuzzyMatrix::from_rows(rows)
    }
}

impl From<FuzzyMatrix> for Vec<Vec<FuzzyNumber>> {
    fn from(m: FuzzyMatrix) -> Self {
        m.entries.chunks(m.cols).map(<[_]>::to_vec).collect()
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), FuzzyError> {
    if expected == found {
        Ok(())
    } else {
        Err(FuzzyError::DimensionMismatch { expected, found })
    }
}
