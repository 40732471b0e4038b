use std::fmt;

use serde::{Deserialize, Serialize};

use super::FuzzyError;

/// A closed, bounded interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(FuzzyError::NonFinite);
        }
        if lo > hi {
            return Err(FuzzyError::InvalidInterval { lo, hi });
        }
        Ok(Self::raw(lo, hi))
    }

    /// Builds an interval from endpoints already known to be ordered.
    ///
    /// Negative zeros are normalised so that serialised output is stable.
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Self {
            lo: lo + 0.0,
            hi: hi + 0.0,
        }
    }

    /// The interval spanned by two values in either order.
    pub fn spanning(a: f64, b: f64) -> Self {
        if a <= b {
            Self::raw(a, b)
        } else {
            Self::raw(b, a)
        }
    }

    pub fn point(v: f64) -> Self {
        Self::raw(v, v)
    }

    pub fn zero() -> Self {
        Self::raw(0.0, 0.0)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Self::raw(self.lo + other.lo, self.hi + other.hi)
    }

    /// `theta * [lo, hi]`; a negative factor swaps the endpoints.
    pub fn scale(&self, theta: f64) -> Interval {
        Self::spanning(theta * self.lo, theta * self.hi)
    }

    /// Generalized Hukuhara difference `[min(dl, dh), max(dl, dh)]`.
    pub fn gh_sub(&self, other: &Interval) -> Interval {
        Self::spanning(self.lo - other.lo, self.hi - other.hi)
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        self.lo - tol <= v && v <= self.hi + tol
    }

    pub fn contains_zero(&self, tol: f64) -> bool {
        self.contains(0.0, tol)
    }

    /// `other ⊆ self`, up to `tol` on each endpoint.
    pub fn encloses(&self, other: &Interval, tol: f64) -> bool {
        self.lo <= other.lo + tol && other.hi <= self.hi + tol
    }

    /// Distance by which zero lies outside the interval (0 when contained).
    pub fn zero_excess(&self) -> f64 {
        self.lo.max(0.0) + (-self.hi).max(0.0)
    }

    /// Intersection, or `None` when the intervals are disjoint by more than `tol`.
    /// Near-touching intervals collapse to their common midpoint.
    pub fn intersect(&self, other: &Interval, tol: f64) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Self::raw(lo, hi))
        } else if lo - hi <= tol {
            Some(Self::point(0.5 * (lo + hi)))
        } else {
            None
        }
    }

    /// `(1 - t) * a + t * b`, endpoint-wise. Monotone rounding keeps `lo <= hi`.
    pub(crate) fn lerp(a: &Interval, b: &Interval, t: f64) -> Interval {
        let s = 1.0 - t;
        let lo = s * a.lo + t * b.lo;
        let hi = s * a.hi + t * b.hi;
        Self::raw(lo, hi.max(lo))
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = FuzzyError;

    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
