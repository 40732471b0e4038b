use serde::{Deserialize, Serialize};

use crate::fuzzy::{weighted_sum, CutFamily, FuzzyError, FuzzyNumber, Interval};

/// `Π (x_i − shift_i)^exp_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    #[serde(rename = "exp")]
    exponents: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shift: Option<Vec<f64>>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents, shift: None }
    }

    /// Monomial in the shifted variables `x − shift`.
    pub fn shifted(exponents: Vec<u32>, shift: Vec<f64>) -> Result<Self, FuzzyError> {
        if shift.len() != exponents.len() {
            return Err(FuzzyError::DimensionMismatch {
                expected: exponents.len(),
                found: shift.len(),
            });
        }
        if shift.iter().any(|s| !s.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        Ok(Self {
            exponents,
            shift: Some(shift),
        })
    }

    /// The constant monomial in `dim` variables.
    pub fn one(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn shift(&self) -> Option<&[f64]> {
        self.shift.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    fn base(&self, x: &[f64], i: usize) -> f64 {
        x[i] - self.shift.as_ref().map_or(0.0, |s| s[i])
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| pow(self.base(x, i), e))
            .product()
    }

    /// `∂/∂x_i` of the monomial at `x`.
    pub fn partial(&self, i: usize, x: &[f64]) -> f64 {
        let e = self.exponents[i];
        if e == 0 {
            return 0.0;
        }
        self.exponents
            .iter()
            .enumerate()
            .map(|(k, &ek)| {
                if k == i {
                    f64::from(e) * pow(self.base(x, k), e - 1)
                } else {
                    pow(self.base(x, k), ek)
                }
            })
            .product()
    }
}

fn pow(b: f64, e: u32) -> f64 {
    match e {
        0 => 1.0,
        1 => b,
        _ => b.powi(e as i32),
    }
}

/// `coef · monomial`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: FuzzyNumber,
    #[serde(flatten)]
    pub mono: Monomial,
}

impl Term {
    pub fn new(coef: FuzzyNumber, mono: Monomial) -> Self {
        Self { coef, mono }
    }
}

/// A polynomial with fuzzy coefficients, optionally gH-minus a fuzzy constant:
/// `(Σ c_k · g_k(x)) ⊖_gH gh_const`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExprRepr", into = "ExprRepr")]
pub struct FuzzyExpr {
    dim: usize,
    terms: Vec<Term>,
    gh_const: Option<FuzzyNumber>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprRepr {
    pub dim: usize,
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gh_const: Option<FuzzyNumber>,
}

impl TryFrom<ExprRepr> for FuzzyExpr {
    type Error = FuzzyError;

    fn try_from(r: ExprRepr) -> Result<Self, Self::Error> {
        FuzzyExpr::new(r.dim, r.terms, r.gh_const)
    }
}

impl From<FuzzyExpr> for ExprRepr {
    fn from(e: FuzzyExpr) -> Self {
        ExprRepr {
            dim: e.dim,
            terms: e.terms,
            gh_const: e.gh_const,
        }
    }
}

impl FuzzyExpr {
    pub fn new(dim: usize, terms: Vec<Term>, gh_const: Option<FuzzyNumber>) -> Result<Self, FuzzyError> {
        if dim == 0 {
            return Err(FuzzyError::Empty("expression dimension"));
        }
        if let Some(t) = terms.iter().find(|t| t.mono.dim() != dim) {
            return Err(FuzzyError::DimensionMismatch {
                expected: dim,
                found: t.mono.dim(),
            });
        }
        Ok(Self { dim, terms, gh_const })
    }

    /// The constant `c` in `dim` variables.
    pub fn constant(dim: usize, c: FuzzyNumber) -> Result<Self, FuzzyError> {
        Self::new(dim, vec![Term::new(c, Monomial::one(dim))], None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn gh_const(&self) -> Option<&FuzzyNumber> {
        self.gh_const.as_ref()
    }

    /// Appends a term, builder style.
    pub fn term(mut self, coef: FuzzyNumber, mono: Monomial) -> Result<Self, FuzzyError> {
        self.check_dim(mono.dim())?;
        self.terms.push(Term::new(coef, mono));
        Ok(self)
    }

    /// Sets the gH-subtracted constant, builder style.
    pub fn minus_gh(mut self, c: FuzzyNumber) -> Self {
        self.gh_const = Some(c);
        self
    }

    fn check_dim(&self, found: usize) -> Result<(), FuzzyError> {
        if found == self.dim {
            Ok(())
        } else {
            Err(FuzzyError::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }

    /// All level cuts of the value at `x`, exact on the returned levels.
    pub fn eval(&self, x: &[f64]) -> Result<CutFamily, FuzzyError> {
        self.check_dim(x.len())?;
        let sum = weighted_sum(self.terms.iter().map(|t| (t.mono.value(x), &t.coef)));
        Ok(match &self.gh_const {
            Some(c) => sum.gh_sub(&CutFamily::of(c)),
            None => sum,
        })
    }

    /// The cut of the value at `x` at level `rho`.
    pub fn eval_at(&self, x: &[f64], rho: f64) -> Result<Interval, FuzzyError> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(FuzzyError::LevelOutOfRange(rho));
        }
        Ok(self.eval(x)?.at(rho))
    }

    /// Term-wise gH-gradient; the gH-subtracted constant contributes nothing.
    pub fn grad(&self, x: &[f64]) -> Result<FuzzyGradient, FuzzyError> {
        self.check_dim(x.len())?;
        let partials = (0..self.dim)
            .map(|i| weighted_sum(self.terms.iter().map(|t| (t.mono.partial(i, x), &t.coef))))
            .collect();
        Ok(FuzzyGradient::new(partials))
    }

    /// `τᵀ ∇H(x)`.
    pub fn directional(&self, x: &[f64], tau: &[f64]) -> Result<CutFamily, FuzzyError> {
        self.check_dim(tau.len())?;
        self.grad(x)?.dot(tau)
    }

    /// Finite-difference quotient `(1/κ)(H(x + κτ) ⊖_gH H(x))`.
    pub fn directional_fd(&self, x: &[f64], tau: &[f64], step: f64) -> Result<CutFamily, FuzzyError> {
        self.check_dim(tau.len())?;
        if !(step > 0.0) {
            return Err(FuzzyError::InvalidShape(format!("finite-difference step must be positive, got {step}")));
        }
        let moved: Vec<f64> = x.iter().zip(tau).map(|(a, t)| a + step * t).collect();
        let d = self.eval(&moved)?.gh_sub(&self.eval(x)?);
        Ok(d.scale(1.0 / step))
    }

    /// Term-list union. The result carries no gH-subtracted constant.
    pub fn concat(&self, other: &FuzzyExpr) -> Result<FuzzyExpr, FuzzyError> {
        self.check_dim(other.dim)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        FuzzyExpr::new(self.dim, terms, None)
    }
}

/// Level-wise partial gH-derivatives on a common grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyGradient {
    partials: Vec<CutFamily>,
}

impl FuzzyGradient {
    /// Aligns the partials on the union of their grids.
    pub fn new(partials: Vec<CutFamily>) -> Self {
        let Some(first) = partials.first() else {
            return Self { partials };
        };
        let grid = partials.iter().skip(1).fold(first.grid().clone(), |g, p| g.union(p.grid()));
        Self {
            partials: partials.iter().map(|p| p.refine(&grid)).collect(),
        }
    }

    pub fn partials(&self) -> &[CutFamily] {
        &self.partials
    }

    pub fn len(&self) -> usize {
        self.partials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partials.is_empty()
    }

    /// `Σ τ_i D_i`.
    pub fn dot(&self, tau: &[f64]) -> Result<CutFamily, FuzzyError> {
        if tau.len() != self.partials.len() {
            return Err(FuzzyError::DimensionMismatch {
                expected: self.partials.len(),
                found: tau.len(),
            });
        }
        Ok(self
            .partials
            .iter()
            .zip(tau)
            .filter(|(_, &t)| t != 0.0)
            .fold(CutFamily::zero(), |acc, (p, &t)| acc.add(&p.scale(t))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::LevelGrid;

    fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
        FuzzyNumber::tri(a, b, c)
    }

    fn assert_cuts(f: &CutFamily, lo: impl Fn(f64) -> f64, hi: impl Fn(f64) -> f64) {
        let g = LevelGrid::uniform(101).unwrap().union(f.grid());
        for &r in g.levels() {
            let c = f.at(r);
            assert!((c.lo() - lo(r)).abs() < 1e-12, "lo at {r}: {} vs {}", c.lo(), lo(r));
            assert!((c.hi() - hi(r)).abs() < 1e-12, "hi at {r}: {} vs {}", c.hi(), hi(r));
        }
    }

    fn fj_objective() -> FuzzyExpr {
        FuzzyExpr::new(
            1,
            vec![
                Term::new(tri(-2.0, -1.0, 1.0), Monomial::new(vec![2])),
                Term::new(tri(-8.0, -4.0, 3.0), Monomial::new(vec![1])),
                Term::new(tri(1.0, 2.0, 4.0), Monomial::new(vec![0])),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn monomial_partials() {
        let m = Monomial::shifted(vec![2, 1], vec![1.5, 0.0]).unwrap();
        assert_eq!(m.value(&[2.5, 3.0]), 3.0);
        assert_eq!(m.partial(0, &[2.5, 3.0]), 6.0);
        assert_eq!(m.partial(1, &[2.5, 3.0]), 1.0);
        assert_eq!(Monomial::one(2).partial(0, &[1.0, 1.0]), 0.0);
    }

    #[test]
    fn objective_value_and_gradient() {
        let h = fj_objective();
        let v = h.eval(&[2.0]).unwrap();
        assert_cuts(&v, |r| 4.0 * (-2.0 + r) + 2.0 * (-8.0 + 4.0 * r) + 1.0 + r, |r| {
            4.0 * (1.0 - 2.0 * r) + 2.0 * (3.0 - 7.0 * r) + 4.0 - 2.0 * r
        });
        let g = h.grad(&[2.0]).unwrap();
        assert_cuts(&g.partials()[0], |r| -16.0 + 8.0 * r, |r| 7.0 - 15.0 * r);
    }

    #[test]
    fn constraint_value_vanishes_at_the_point() {
        let y1 = FuzzyExpr::new(1, vec![Term::new(tri(-4.0, 5.0, 7.0), Monomial::new(vec![1]))], None)
            .unwrap()
            .minus_gh(tri(-8.0, 10.0, 14.0));
        let v = y1.eval(&[2.0]).unwrap();
        assert!(v.cuts().iter().all(|c| c.lo().abs() < 1e-12 && c.hi().abs() < 1e-12));
        assert_cuts(&y1.grad(&[2.0]).unwrap().partials()[0], |r| -4.0 + 9.0 * r, |r| 7.0 - 2.0 * r);
    }

    #[test]
    fn shifted_quadratic_gradient() {
        let h = FuzzyExpr::new(
            2,
            vec![
                Term::new(tri(2.0, 3.0, 7.0), Monomial::shifted(vec![2, 0], vec![1.5, 0.0]).unwrap()),
                Term::new(tri(1.0, 2.0, 5.0), Monomial::new(vec![0, 2])),
                Term::new(FuzzyNumber::crisp(1.0), Monomial::one(2)),
            ],
            None,
        )
        .unwrap();
        let g = h.grad(&[1.5, 1.0]).unwrap();
        assert_cuts(&g.partials()[0], |_| 0.0, |_| 0.0);
        assert_cuts(&g.partials()[1], |r| 2.0 + 2.0 * r, |r| 10.0 - 6.0 * r);
        let d = h.directional(&[1.5, 1.0], &[0.0, -1.0]).unwrap();
        assert_cuts(&d, |r| -10.0 + 6.0 * r, |r| -2.0 - 2.0 * r);
    }

    #[test]
    fn dimension_errors() {
        let h = fj_objective();
        assert!(h.eval(&[1.0, 2.0]).is_err());
        assert!(h.directional(&[1.0], &[1.0, 0.0]).is_err());
        assert!(h.eval_at(&[1.0], 2.0).is_err());
        assert!(FuzzyExpr::new(2, vec![Term::new(tri(0.0, 0.0, 0.0), Monomial::new(vec![1]))], None).is_err());
    }

    #[test]
    fn linear_fd_quotient_is_exact() {
        let e = FuzzyExpr::new(1, vec![Term::new(tri(-4.0, 5.0, 7.0), Monomial::new(vec![1]))], None).unwrap();
        let d = e.directional_fd(&[3.0], &[1.0], 0.5).unwrap();
        assert_cuts(&d, |r| -4.0 + 9.0 * r, |r| 7.0 - 2.0 * r);
    }

    #[test]
    fn json_schema() {
        let src = r#"{"dim":2,"terms":[{"coef":{"tri":[2,3,7]},"exp":[2,0],"shift":[1.5,0]},
                     {"coef":{"tri":[1,2,5]},"exp":[0,2]}],"gh_const":{"tri":[0,0,0]}}"#;
        let e: FuzzyExpr = serde_json::from_str(src).unwrap();
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.terms()[0].mono.shift(), Some(&[1.5, 0.0][..]));
        let back: FuzzyExpr = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<FuzzyExpr>(r#"{"dim":1,"terms":[{"coef":{"tri":[0,0,0]},"exp":[1,1]}]}"#).is_err());
    }
}
