use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CutFamily, Cuts, FuzzyError, Interval, LevelGrid};

/// The concrete representation behind a [`FuzzyNumber`].
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// `⟨a, b, c⟩`: support `[a, c]`, core `{b}`.
    Triangular { a: f64, b: f64, c: f64 },
    /// Support `[a, d]`, core `[b, c]`.
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    /// Nested cuts on an explicit grid, interpolated linearly in between.
    Sampled(CutFamily),
}

/// A normal fuzzy number described by its nested level cuts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NumberRepr", into = "NumberRepr")]
pub struct FuzzyNumber {
    shape: Shape,
}

impl FuzzyNumber {
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        check_finite(&[a, b, c])?;
        if !(a <= b && b <= c) {
            return Err(FuzzyError::InvalidShape(format!("triangular needs a <= b <= c, got ⟨{a}, {b}, {c}⟩")));
        }
        Ok(Self::tri_raw(a, b, c))
    }

    /// Shorthand for [`FuzzyNumber::triangular`] on literal data.
    ///
    /// # Panics
    /// If `a <= b <= c` does not hold.
    pub fn tri(a: f64, b: f64, c: f64) -> Self {
        Self::triangular(a, b, c).expect("invalid triangular fuzzy number")
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        check_finite(&[a, b, c, d])?;
        if !(a <= b && b <= c && c <= d) {
            return Err(FuzzyError::InvalidShape(format!(
                "trapezoidal needs a <= b <= c <= d, got ⟨{a}, {b}, {c}, {d}⟩"
            )));
        }
        Ok(Self {
            shape: Shape::Trapezoidal {
                a: a + 0.0,
                b: b + 0.0,
                c: c + 0.0,
                d: d + 0.0,
            },
        })
    }

    /// A fuzzy number given by nested cuts on `grid`.
    pub fn sampled(grid: LevelGrid, cuts: Vec<Interval>) -> Result<Self, FuzzyError> {
        let family = CutFamily::new(grid, cuts)?;
        if let Some((outer, inner)) = family.nesting_violation(0.0) {
            return Err(FuzzyError::NotNested { outer, inner });
        }
        Ok(Self {
            shape: Shape::Sampled(family),
        })
    }

    /// The crisp number `v` viewed as a fuzzy number.
    pub fn crisp(v: f64) -> Self {
        Self::tri_raw(v, v, v)
    }

    /// `0̃`.
    pub fn zero() -> Self {
        Self::crisp(0.0)
    }

    fn tri_raw(a: f64, b: f64, c: f64) -> Self {
        Self {
            shape: Shape::Triangular {
                a: a + 0.0,
                b: b + 0.0,
                c: c + 0.0,
            },
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The cut at `rho`; errors when `rho` is outside `[0, 1]`.
    pub fn cut(&self, rho: f64) -> Result<Interval, FuzzyError> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(FuzzyError::LevelOutOfRange(rho));
        }
        Ok(self.cut_at(rho))
    }

    pub fn core(&self) -> Interval {
        self.cut_at(1.0)
    }

    pub fn support(&self) -> Interval {
        self.cut_at(0.0)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.kinks().iter().all(|&r| {
            let c = self.cut_at(r);
            c.lo().abs() <= tol && c.hi().abs() <= tol
        })
    }

    /// Level-wise sum. Triangular and trapezoidal shapes are closed under addition.
    pub fn add(&self, other: &FuzzyNumber) -> FuzzyNumber {
        use Shape::*;
        match (&self.shape, &other.shape) {
            (Triangular { a, b, c }, Triangular { a: a2, b: b2, c: c2 }) => {
                Self::tri_raw(a + a2, b + b2, c + c2)
            }
            (Sampled(_), _) | (_, Sampled(_)) => {
                let sum = CutFamily::of(self).add(&CutFamily::of(other));
                FuzzyNumber {
                    shape: Sampled(sum),
                }
            }
            _ => {
                let [a, b, c, d] = self.trapezoid_params();
                let [a2, b2, c2, d2] = other.trapezoid_params();
                FuzzyNumber {
                    shape: Trapezoidal {
                        a: a + a2,
                        b: b + b2,
                        c: c + c2,
                        d: d + d2,
                    },
                }
            }
        }
    }

    /// `theta * m`; a negative factor reflects the number.
    pub fn scale(&self, theta: f64) -> FuzzyNumber {
        use Shape::*;
        let t = theta;
        match &self.shape {
            _ if t == 0.0 => Self::zero(),
            Triangular { a, b, c } if t > 0.0 => Self::tri_raw(t * a, t * b, t * c),
            Triangular { a, b, c } => Self::tri_raw(t * c, t * b, t * a),
            Trapezoidal { a, b, c, d } => {
                let (a, b, c, d) = if t > 0.0 {
                    (t * a, t * b, t * c, t * d)
                } else {
                    (t * d, t * c, t * b, t * a)
                };
                FuzzyNumber {
                    shape: Trapezoidal {
                        a: a + 0.0,
                        b: b + 0.0,
                        c: c + 0.0,
                        d: d + 0.0,
                    },
                }
            }
            Sampled(f) => FuzzyNumber {
                shape: Sampled(f.scale(t)),
            },
        }
    }

    pub fn neg(&self) -> FuzzyNumber {
        self.scale(-1.0)
    }

    /// Cuts on `grid` plus this number's own breakpoints.
    pub fn to_family(&self, grid: &LevelGrid) -> CutFamily {
        CutFamily::sample(self, grid)
    }

    /// Recognises sampled data that is exactly triangular or trapezoidal (within `tol`).
    pub fn simplified(&self, tol: f64) -> FuzzyNumber {
        let Shape::Sampled(f) = &self.shape else {
            return self.clone();
        };
        let (s, k) = (self.support(), self.core());
        let affine = f.iter().all(|(r, c)| {
            (c.lo() - (s.lo() + (k.lo() - s.lo()) * r)).abs() <= tol
                && (c.hi() - (s.hi() - (s.hi() - k.hi()) * r)).abs() <= tol
        });
        if !affine {
            return self.clone();
        }
        if k.width() <= tol {
            let b = k.midpoint().clamp(s.lo(), s.hi());
            Self::tri_raw(s.lo(), b, s.hi())
        } else {
            FuzzyNumber {
                shape: Shape::Trapezoidal {
                    a: s.lo(),
                    b: k.lo(),
                    c: k.hi(),
                    d: s.hi(),
                },
            }
        }
    }

    fn trapezoid_params(&self) -> [f64; 4] {
        match self.shape {
            Shape::Triangular { a, b, c } => [a, b, b, c],
            Shape::Trapezoidal { a, b, c, d } => [a, b, c, d],
            Shape::Sampled(_) => unreachable!("sampled shapes are handled separately"),
        }
    }
}

impl Cuts for FuzzyNumber {
    fn cut_at(&self, rho: f64) -> Interval {
        match &self.shape {
            // (1 - r) * a + r * b keeps both ends exact and lo <= hi under rounding.
            Shape::Triangular { a, b, c } => {
                let s = 1.0 - rho;
                Interval::raw(s * a + rho * b, s * c + rho * b)
            }
            Shape::Trapezoidal { a, b, c, d } => {
                let s = 1.0 - rho;
                Interval::raw(s * a + rho * b, s * d + rho * c)
            }
            Shape::Sampled(f) => f.at(rho),
        }
    }

    fn kinks(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Sampled(f) => f.kinks(),
            _ => vec![0.0, 1.0],
        }
    }
}

impl fmt::Display for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Triangular { a, b, c } => write!(f, "⟨{a}, {b}, {c}⟩"),
            Shape::Trapezoidal { a, b, c, d } => write!(f, "⟨{a}, {b}, {c}, {d}⟩"),
            Shape::Sampled(s) => write!(f, "sampled({} levels)", s.grid().len()),
        }
    }
}

fn check_finite(vals: &[f64]) -> Result<(), FuzzyError> {
    if vals.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(FuzzyError::NonFinite)
    }
}

/// Wire form: `{"tri":[a,b,c]}`, `{"trap":[a,b,c,d]}` or
/// `{"sampled":{"levels":[...],"cuts":[[lo,hi],...]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum NumberRepr {
    Tri([f64; 3]),
    Trap([f64; 4]),
    Sampled { levels: Vec<f64>, cuts: Vec<[f64; 2]> },
}

impl TryFrom<NumberRepr> for FuzzyNumber {
    type Error = FuzzyError;

    fn try_from(r: NumberRepr) -> Result<Self, Self::Error> {
        match r {
            NumberRepr::Tri([a, b, c]) => FuzzyNumber::triangular(a, b, c),
            NumberRepr::Trap([a, b, c, d]) => FuzzyNumber::trapezoidal(a, b, c, d),
            NumberRepr::Sampled { levels, cuts } => {
                let grid = LevelGrid::new(levels)?;
                let cuts = cuts
                    .into_iter()
                    .map(Interval::try_from)
                    .collect::<Result<Vec<_>, _>>()?;
                FuzzyNumber::sampled(grid, cuts)
            }
        }
    }
}

impl From<FuzzyNumber> for NumberRepr {
    fn from(m: FuzzyNumber) -> Self {
        match m.shape {
            Shape::Triangular { a, b, c } => NumberRepr::Tri([a, b, c]),
            Shape::Trapezoidal { a, b, c, d } => NumberRepr::Trap([a, b, c, d]),
            Shape::Sampled(f) => NumberRepr::Sampled {
                levels: f.grid().levels().to_vec(),
                cuts: f.cuts().iter().map(|&c| c.into()).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Interval, lo: f64, hi: f64) -> bool {
        (a.lo() - lo).abs() < 1e-12 && (a.hi() - hi).abs() < 1e-12
    }

    #[test]
    fn triangular_cut_formula() {
        let m = FuzzyNumber::tri(2.0, 3.0, 7.0);
        for r in [0.0, 0.3, 0.5, 1.0] {
            assert!(close(m.cut(r).unwrap(), 2.0 + r, 7.0 - 4.0 * r));
        }
        assert_eq!(FuzzyNumber::tri(5.0, 5.0, 5.0).cut(0.3).unwrap(), Interval::point(5.0));
        assert!(close(FuzzyNumber::tri(1.0, 2.0, 3.0).cut(0.5).unwrap(), 1.5, 2.5));
    }

    #[test]
    fn cut_rejects_out_of_range_levels() {
        let m = FuzzyNumber::tri(1.0, 2.0, 3.0);
        assert!(matches!(m.cut(1.5), Err(FuzzyError::LevelOutOfRange(_))));
        assert!(m.cut(-0.1).is_err());
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        assert!(FuzzyNumber::triangular(3.0, 2.0, 1.0).is_err());
        assert!(FuzzyNumber::trapezoidal(0.0, 2.0, 1.0, 3.0).is_err());
        let g = LevelGrid::endpoints();
        let widening = vec![Interval::point(0.0), Interval::new(-1.0, 1.0).unwrap()];
        assert!(matches!(FuzzyNumber::sampled(g, widening), Err(FuzzyError::NotNested { .. })));
    }

    #[test]
    fn arithmetic_on_triangles() {
        let sum = FuzzyNumber::tri(6.0, 15.0, 18.0).add(&FuzzyNumber::tri(1.0, 2.0, 3.0));
        assert_eq!(sum, FuzzyNumber::tri(7.0, 17.0, 21.0));
        assert_eq!(FuzzyNumber::tri(2.0, 5.0, 6.0).scale(3.0), FuzzyNumber::tri(6.0, 15.0, 18.0));
        assert_eq!(FuzzyNumber::tri(1.0, 2.0, 3.0).neg(), FuzzyNumber::tri(-3.0, -2.0, -1.0));
        assert_eq!(FuzzyNumber::tri(1.0, 2.0, 3.0).scale(0.0), FuzzyNumber::zero());
        let m = FuzzyNumber::tri(1.0, 2.0, 3.0);
        assert_eq!(m.add(&FuzzyNumber::zero()), m);
    }

    #[test]
    fn mixed_shapes_promote() {
        let t = FuzzyNumber::tri(0.0, 1.0, 2.0);
        let z = FuzzyNumber::trapezoidal(0.0, 1.0, 2.0, 3.0).unwrap();
        assert!(matches!(t.add(&z).shape(), Shape::Trapezoidal { .. }));
        let s = t.to_family(&LevelGrid::default()).as_fuzzy_number(0.0).unwrap();
        let sum = s.add(&t);
        assert!(matches!(sum.shape(), Shape::Sampled(_)));
        assert!(close(sum.cut(0.25).unwrap(), 0.5, 3.5));
        assert_eq!(sum.simplified(1e-12), FuzzyNumber::tri(0.0, 2.0, 4.0));
    }

    #[test]
    fn json_wire_format() {
        let m: FuzzyNumber = serde_json::from_str(r#"{"tri":[2,3,7]}"#).unwrap();
        assert_eq!(m, FuzzyNumber::tri(2.0, 3.0, 7.0));
        let t: FuzzyNumber = serde_json::from_str(r#"{"trap":[0,1,2,3]}"#).unwrap();
        assert_eq!(t.core(), Interval::new(1.0, 2.0).unwrap());
        let s: FuzzyNumber =
            serde_json::from_str(r#"{"sampled":{"levels":[0,1],"cuts":[[0,4],[1,2]]}}"#).unwrap();
        assert_eq!(s.support(), Interval::new(0.0, 4.0).unwrap());
        assert!(serde_json::from_str::<FuzzyNumber>(r#"{"tri":[3,2,1]}"#).is_err());
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"tri":[2.0,3.0,7.0]}"#);
    }
}
