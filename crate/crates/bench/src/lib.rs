//! Seeded instance generators shared by the solver benchmarks.

use fuzzopt_core::fuzzy::{FuzzyMatrix, FuzzyNumber, FuzzyVector};
use fuzzopt_core::lp::{Bounds, Constraint, LinearProgram};
use fuzzopt_core::svm::{FuzzyDataset, Label, LabeledPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Triangular number with core `c` and spreads drawn from `[0, spread)`.
pub fn random_tri(rng: &mut ChaCha8Rng, c: f64, spread: f64) -> FuzzyNumber {
    let l = rng.random_range(0.0..spread);
    let r = rng.random_range(0.0..spread);
    FuzzyNumber::tri(c - l, c, c + r)
}

/// Bounded, feasible LP with `m` inequality rows over `n` variables in `[-10, 10]`.
pub fn random_lp(m: usize, n: usize, seed: u64) -> LinearProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut p = LinearProgram::new(n).minimize(c).all_bounds(Bounds::range(-10.0, 10.0));
    for _ in 0..m {
        let row = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        p.push(Constraint::le(row, rng.random_range(0.5..2.0)));
    }
    p
}

/// `s × n` fuzzy matrix with cores in `[-1, 1]`.
pub fn random_matrix(s: usize, n: usize, seed: u64) -> FuzzyMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..s)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let c = rng.random_range(-1.0..1.0);
                    random_tri(&mut rng, c, 0.5)
                })
                .collect()
        })
        .collect();
    FuzzyMatrix::from_rows(rows).expect("rectangular")
}

/// Two well separated clouds in the plane, `per_class` points each.
pub fn separable_dataset(per_class: usize, seed: u64) -> FuzzyDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(2 * per_class);
    for (label, centre) in [(Label::Positive, 4.0), (Label::Negative, -4.0)] {
        for _ in 0..per_class {
            let coords = (0..2)
                .map(|_| {
                    let c = centre + rng.random_range(-1.5..1.5);
                    random_tri(&mut rng, c, 0.3)
                })
                .collect();
            points.push(LabeledPoint {
                coords: FuzzyVector::new(coords).expect("nonempty"),
                label,
            });
        }
    }
    FuzzyDataset::new(points).expect("both labels present")
}
