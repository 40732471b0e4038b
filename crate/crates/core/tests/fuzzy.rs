use fuzzopt_core::fuzzy::{compare, distance, gh_difference, CutFamily, Cuts, FuzzyNumber, Interval, LevelGrid};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

/// Sorted triple; integer-valued a third of the time so ties and touching endpoints occur.
fn random_tri(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let mut v = if rng.random_bool(1.0 / 3.0) {
        [0; 3].map(|_| rng.random_range(-4..=4) as f64)
    } else {
        [0; 3].map(|_| rng.random_range(-10.0..10.0))
    };
    v.sort_by(f64::total_cmp);
    v
}

fn tri_cut(t: [f64; 3], r: f64) -> (f64, f64) {
    (t[0] + (t[1] - t[0]) * r, t[2] - (t[2] - t[1]) * r)
}

fn dense() -> LevelGrid {
    LevelGrid::uniform(101).unwrap()
}

#[test]
fn gh_difference_matches_endpoint_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = LevelGrid::default();
    for _ in 0..10_000 {
        let (p, q) = (random_tri(&mut rng), random_tri(&mut rng));
        let d = gh_difference(&FuzzyNumber::tri(p[0], p[1], p[2]), &FuzzyNumber::tri(q[0], q[1], q[2]), &grid);
        let probes = grid.levels().iter().copied().chain((0..5).map(|_| rng.random_range(0.0..=1.0)));
        for r in probes {
            let ((a, b), (c, e)) = (tri_cut(p, r), tri_cut(q, r));
            let (dl, dh) = (a - c, b - e);
            let got = d.at(r);
            let scale = 1.0 + p.iter().chain(&q).map(|v| v.abs()).fold(0.0, f64::max);
            assert!((got.lo() - dl.min(dh)).abs() <= 1e-12 * scale, "{p:?} {q:?} at {r}");
            assert!((got.hi() - dl.max(dh)).abs() <= 1e-12 * scale, "{p:?} {q:?} at {r}");
        }
    }
}

#[test]
fn weak_order_iff_gh_difference_nonpositive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let grid = LevelGrid::default();
    let (mut weak, mut strict) = (0, 0);
    for _ in 0..10_000 {
        let (p, q) = (random_tri(&mut rng), random_tri(&mut rng));
        let (m, l) = (FuzzyNumber::tri(p[0], p[1], p[2]), FuzzyNumber::tri(q[0], q[1], q[2]));
        let ord = compare(&m, &l, &grid, TOL);
        let d = gh_difference(&m, &l, &grid);
        let levels = grid.with_levels(&d.kinks());
        let his: Vec<f64> = levels.levels().iter().map(|&r| d.at(r).hi()).collect();
        assert_eq!(ord.weak_all, his.iter().all(|&h| h <= TOL), "{p:?} {q:?}");
        assert_eq!(ord.strict_all, his.iter().all(|&h| h < 0.0), "{p:?} {q:?}");
        weak += ord.weak_all as usize;
        strict += ord.strict_all as usize;
    }
    // Both sides of each equivalence must actually be exercised.
    assert!(weak > 500 && weak < 9_500, "weak {weak}");
    assert!(strict > 100, "strict {strict}");
}

fn tri() -> impl Strategy<Value = FuzzyNumber> {
    prop::array::uniform3(-10.0..10.0f64).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        FuzzyNumber::tri(v[0], v[1], v[2])
    })
}

fn trap() -> impl Strategy<Value = FuzzyNumber> {
    prop::array::uniform4(-10.0..10.0f64).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        FuzzyNumber::trapezoidal(v[0], v[1], v[2], v[3]).unwrap()
    })
}

fn sampled() -> impl Strategy<Value = FuzzyNumber> {
    // Nested cuts from cumulative nonnegative shrink steps.
    (-5.0..5.0f64, 0.0..5.0f64, prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 4)).prop_map(|(c, w, steps)| {
        let mut cuts = vec![Interval::new(c - w, c + w).unwrap()];
        for (a, b) in steps {
            let p = *cuts.last().unwrap();
            let lo = p.lo() + a * p.width() / 2.0;
            let hi = (p.hi() - b * p.width() / 2.0).max(lo);
            cuts.push(Interval::new(lo, hi).unwrap());
        }
        FuzzyNumber::sampled(LevelGrid::uniform(5).unwrap(), cuts).unwrap()
    })
}

fn any_number() -> impl Strategy<Value = FuzzyNumber> {
    prop_oneof![tri(), trap(), sampled()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cuts_are_nested(m in any_number()) {
        let g = dense();
        let lv = g.levels();
        for w in lv.windows(2) {
            let (outer, inner) = (m.cut(w[0]).unwrap(), m.cut(w[1]).unwrap());
            prop_assert!(outer.encloses(&inner, 1e-12), "{:?} at {}", m, w[1]);
        }
    }

    #[test]
    fn addition_commutes_and_associates(a in any_number(), b in any_number(), c in any_number()) {
        let g = dense();
        prop_assert!(distance(&a.add(&b), &b.add(&a), &g) <= 1e-12);
        let left = a.add(&b).add(&c);
        let right = a.add(&b.add(&c));
        prop_assert!(distance(&left, &right, &g) <= 1e-12 * 30.0);
    }

    #[test]
    fn zero_is_identity_and_negation_involutes(a in any_number()) {
        let g = dense();
        prop_assert_eq!(distance(&a.add(&FuzzyNumber::zero()), &a, &g), 0.0);
        prop_assert_eq!(distance(&a.scale(-1.0).scale(-1.0), &a, &g), 0.0);
    }

    #[test]
    fn breakpoint_evaluation_equals_dense(m in prop_oneof![tri(), trap()]) {
        let exact = CutFamily::of(&m);
        for &r in dense().levels() {
            let (x, y) = (exact.at(r), m.cut(r).unwrap());
            prop_assert!((x.lo() - y.lo()).abs() <= 1e-12 && (x.hi() - y.hi()).abs() <= 1e-12);
        }
    }

    #[test]
    fn order_is_reflexive_but_not_strict(a in any_number()) {
        let r = compare(&a, &a, &LevelGrid::default(), TOL);
        prop_assert!(r.weak_all && !r.strict_some && !r.preceq());
    }
}
