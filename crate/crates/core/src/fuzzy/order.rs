use serde::{Deserialize, Serialize};

use super::{evaluation_levels, CutFamily, Cuts, FuzzyError, FuzzyNumber, LevelGrid};

/// Outcome of comparing two level-wise interval families endpoint by endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderResult {
    /// Both endpoints `<=` at every level (the weak order).
    pub weak_all: bool,
    /// Some endpoint strictly smaller at some level.
    pub strict_some: bool,
    /// Both endpoints strictly smaller at every level.
    pub strict_all: bool,
}

impl OrderResult {
    /// Weak order plus strictness somewhere.
    pub fn preceq(&self) -> bool {
        self.weak_all && self.strict_some
    }
}

/// Compares `a` against `b` on `grid` plus every kink of both operands.
///
/// The weak part allows `tol` of slack; strictness uses exact `<`.
pub fn compare<A, B>(a: &A, b: &B, grid: &LevelGrid, tol: f64) -> OrderResult
where
    A: Cuts + ?Sized,
    B: Cuts + ?Sized,
{
    let g = evaluation_levels(grid, &[&Dyn(a), &Dyn(b)]);
    let mut out = OrderResult {
        weak_all: true,
        strict_some: false,
        strict_all: true,
    };
    for &r in g.levels() {
        let (x, y) = (a.cut_at(r), b.cut_at(r));
        out.weak_all &= x.lo() <= y.lo() + tol && x.hi() <= y.hi() + tol;
        let (sl, sh) = (x.lo() < y.lo(), x.hi() < y.hi());
        out.strict_some |= sl || sh;
        out.strict_all &= sl && sh;
    }
    out
}

/// Compares against `0̃`.
pub fn compare_zero<A: Cuts + ?Sized>(a: &A, grid: &LevelGrid, tol: f64) -> OrderResult {
    compare(a, &FuzzyNumber::zero(), grid, tol)
}

/// Zero membership at a single level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelMembership {
    pub rho: f64,
    pub contains: bool,
}

/// `lo <= 0 <= hi` (within `tol`) at every level.
pub fn contains_zero<A: Cuts + ?Sized>(a: &A, grid: &LevelGrid, tol: f64) -> bool {
    contains_zero_per_level(a, grid, tol).iter().all(|m| m.contains)
}

/// Zero membership reported level by level.
pub fn contains_zero_per_level<A: Cuts + ?Sized>(a: &A, grid: &LevelGrid, tol: f64) -> Vec<LevelMembership> {
    let g = grid.with_levels(&a.kinks());
    g.levels()
        .iter()
        .map(|&rho| LevelMembership {
            rho,
            contains: a.cut_at(rho).contains_zero(tol),
        })
        .collect()
}

/// Every cut within `tol` of `[0, 0]`.
pub fn is_zero<A: Cuts + ?Sized>(a: &A, grid: &LevelGrid, tol: f64) -> bool {
    let g = grid.with_levels(&a.kinks());
    g.levels().iter().all(|&r| {
        let c = a.cut_at(r);
        c.lo().abs() <= tol && c.hi().abs() <= tol
    })
}

/// Largest endpoint distance over all levels.
///
/// Endpoint differences are affine between kinks, so the supremum is attained
/// at an evaluated level.
pub fn distance<A, B>(a: &A, b: &B, grid: &LevelGrid) -> f64
where
    A: Cuts + ?Sized,
    B: Cuts + ?Sized,
{
    let g = evaluation_levels(grid, &[&Dyn(a), &Dyn(b)]);
    g.levels()
        .iter()
        .map(|&r| {
            let (x, y) = (a.cut_at(r), b.cut_at(r));
            (x.lo() - y.lo()).abs().max((x.hi() - y.hi()).abs())
        })
        .fold(0.0, f64::max)
}

/// Level-wise gH-difference of two fuzzy numbers, evaluated on `grid` plus
/// both operands' breakpoints and any endpoint-crossing levels.
pub fn gh_difference(m: &FuzzyNumber, l: &FuzzyNumber, grid: &LevelGrid) -> CutFamily {
    m.to_family(grid).gh_sub(&l.to_family(grid))
}

/// Converts a level family to a fuzzy number if its cuts are nested within `tol`.
pub fn as_fuzzy_number(f: &CutFamily, tol: f64) -> Result<FuzzyNumber, FuzzyError> {
    f.as_fuzzy_number(tol)
}

/// Component-wise comparison of two equally long sequences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorOrder {
    pub components: Vec<OrderResult>,
}

impl VectorOrder {
    pub fn weak_all(&self) -> bool {
        self.components.iter().all(|c| c.weak_all)
    }

    /// Every component satisfies the weak-plus-somewhere-strict order.
    pub fn preceq(&self) -> bool {
        self.components.iter().all(OrderResult::preceq)
    }

    pub fn strict_all(&self) -> bool {
        self.components.iter().all(|c| c.strict_all)
    }
}

pub fn compare_componentwise<A: Cuts, B: Cuts>(
    a: &[A],
    b: &[B],
    grid: &LevelGrid,
    tol: f64,
) -> Result<VectorOrder, FuzzyError> {
    if a.len() != b.len() {
        return Err(FuzzyError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(VectorOrder {
        components: a.iter().zip(b).map(|(x, y)| compare(x, y, grid, tol)).collect(),
    })
}

/// Adapter so unsized generic operands can be passed as `&dyn Cuts`.
struct Dyn<'a, T: ?Sized>(&'a T);

impl<T: Cuts + ?Sized> Cuts for Dyn<'_, T> {
    fn cut_at(&self, rho: f64) -> super::Interval {
        self.0.cut_at(rho)
    }

    fn kinks(&self) -> Vec<f64> {
        self.0.kinks()
    }
}
