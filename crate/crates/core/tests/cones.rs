use fuzzopt_core::cones::{
    in_descent_cone, in_feasible_cone_box, in_linearized_feasible_cone, intersection_empty_sampled, FeasibleSet,
};
use fuzzopt_core::fixtures;
use fuzzopt_core::optimality::fritz_john_verify;
use fuzzopt_core::{FuzzyExpr, FuzzyNumber, Monomial, Settings, Term};
use proptest::prelude::*;

fn box_set() -> FeasibleSet {
    FeasibleSet::boxed(fixtures::BOX_LO.to_vec(), fixtures::BOX_HI.to_vec()).unwrap()
}

#[test]
fn box_example_cones() {
    let s = Settings::default();
    let e = fixtures::box_problem().objective().clone();
    let x = fixtures::BOX_OPTIMUM;
    assert!(in_descent_cone(&e, &x, &[0.7, -1.0], &s).unwrap());
    assert!(!in_descent_cone(&e, &x, &[1.0, 0.0], &s).unwrap());
    assert!(!in_descent_cone(&e, &x, &[0.0, 0.0], &s).unwrap());
    let (lo, hi) = (fixtures::BOX_LO, fixtures::BOX_HI);
    assert!(in_feasible_cone_box(&lo, &hi, &x, &[-1.0, 0.2], 1e-9).unwrap());
    assert!(!in_feasible_cone_box(&lo, &hi, &fixtures::BOX_OTHER, &[0.0, 1.0], 1e-9).unwrap());
    assert!(in_feasible_cone_box(&lo, &hi, &[1.5, 1.5], &[0.0, -1.0], 1e-9).unwrap());
}

#[test]
fn sampled_intersection_on_box_example() {
    let s = Settings::default();
    let e = fixtures::box_problem().objective().clone();
    let at_opt = intersection_empty_sampled(&e, &box_set(), &fixtures::BOX_OPTIMUM, 10_000, 42, &s).unwrap();
    assert!(at_opt.empty_suspected && at_opt.counterexample.is_none());
    assert_eq!(at_opt.trials, 10_000);
    let other = intersection_empty_sampled(&e, &box_set(), &fixtures::BOX_OTHER, 100, 42, &s).unwrap();
    let tau = other.counterexample.expect("descent direction at the upper face");
    assert!(tau[1] < 0.0);
}

#[test]
fn fj_linearized_cone() {
    let s = Settings::default();
    let p = fixtures::fj_1d();
    assert!(!in_linearized_feasible_cone(p.constraints(), &[2.0], &[-1.0], &s).unwrap());
    assert!(!in_linearized_feasible_cone(p.constraints(), &[2.0], &[1.0], &s).unwrap());
    // Nothing is active here, so every nonzero direction qualifies.
    let q = fixtures::kkt_2d();
    assert!(in_linearized_feasible_cone(&q.constraints()[1..], &fixtures::KKT_2D_POINT, &[1.0, 0.0], &s).unwrap());
}

#[test]
fn sampling_agrees_with_fritz_john_certificates() {
    let s = Settings::default();
    let cases = [
        (fixtures::fj_1d(), fixtures::FJ_1D_POINT.to_vec(), 5.0, vec![8.0, 0.0]),
        (fixtures::kkt_2d(), fixtures::KKT_2D_POINT.to_vec(), 2.5, vec![1.0, 0.0]),
    ];
    for (p, x, k0, ks) in cases {
        assert!(fritz_john_verify(&p, &x, k0, &ks, &s).unwrap().pass);
        let set = FeasibleSet::Constrained {
            constraints: p.constraints().to_vec(),
        };
        let r = intersection_empty_sampled(p.objective(), &set, &x, 10_000, 7, &s).unwrap();
        assert!(r.empty_suspected, "counterexample {:?}", r.counterexample);
    }
}

#[test]
fn crisp_minimum_has_no_descent() {
    let s = Settings::default();
    let e = FuzzyExpr::new(1, vec![Term::new(FuzzyNumber::crisp(1.0), Monomial::new(vec![2]))], None).unwrap();
    let set = FeasibleSet::boxed(vec![-1.0], vec![1.0]).unwrap();
    let r = intersection_empty_sampled(&e, &set, &[0.0], 1_000, 1, &s).unwrap();
    assert!(r.empty_suspected);
}

fn coef() -> impl Strategy<Value = FuzzyNumber> {
    prop::array::uniform3(-4.0..4.0f64).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        FuzzyNumber::tri(v[0], v[1], v[2])
    })
}

fn expr2() -> impl Strategy<Value = FuzzyExpr> {
    prop::collection::vec((coef(), prop::collection::vec(0u32..=2, 2)), 1..4).prop_map(|ts| {
        let terms = ts.into_iter().map(|(c, e)| Term::new(c, Monomial::new(e))).collect();
        FuzzyExpr::new(2, terms, None).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cones_are_invariant_under_positive_scaling(
        e in expr2(),
        x in prop::collection::vec(1.0..2.0f64, 2),
        tau in prop::collection::vec(-1.0..1.0f64, 2),
        snap in prop::collection::vec(0usize..3, 2),
    ) {
        let s = Settings::default();
        // Put some coordinates on a face so the box cone is not trivially everything.
        let x: Vec<f64> = x.iter().zip(&snap).map(|(&v, &k)| [v, 1.0, 2.0][k]).collect();
        let (lo, hi) = ([1.0, 1.0], [2.0, 2.0]);
        let base_d = in_descent_cone(&e, &x, &tau, &s).unwrap();
        let base_f = in_feasible_cone_box(&lo, &hi, &x, &tau, 1e-9).unwrap();
        for c in [0.5, 2.0, 10.0] {
            let t: Vec<f64> = tau.iter().map(|v| c * v).collect();
            prop_assert_eq!(in_descent_cone(&e, &x, &t, &s).unwrap(), base_d);
            prop_assert_eq!(in_feasible_cone_box(&lo, &hi, &x, &t, 1e-9).unwrap(), base_f);
        }
    }

    #[test]
    fn descent_membership_matches_fd_quotient(
        e in expr2(),
        x in prop::collection::vec(0.5..2.0f64, 2),
        dir in prop::collection::vec(0.1..1.0f64, 2),
        negate in any::<bool>(),
    ) {
        // Positive point and a sign-fixed direction keep the term-wise derivative
        // equal to the limit of the quotient.
        let s = Settings::default();
        let tau: Vec<f64> = dir.iter().map(|v| if negate { -v } else { *v }).collect();
        let exact = e.directional(&x, &tau).unwrap();
        let fd = e.directional_fd(&x, &tau, 1e-6).unwrap();
        let worst = s.grid.levels().iter().map(|&r| exact.at(r).hi()).fold(f64::NEG_INFINITY, f64::max);
        prop_assume!(worst.abs() > 1e-4);
        let by_fd = s.grid.levels().iter().all(|&r| fd.at(r).hi() < 0.0);
        prop_assert_eq!(in_descent_cone(&e, &x, &tau, &s).unwrap(), by_fd);
    }
}
