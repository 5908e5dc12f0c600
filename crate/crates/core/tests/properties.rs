use natchain_core::chain::coordinate_planes;
use natchain_core::io::{from_json_str, to_json_string};
use natchain_core::mass::term_mass;
use natchain_core::norms::flat_norm_eval;
use natchain_core::{OrientedSimplex, Point, Polynomial, PolynomialForm, SimplicialChain};
use proptest::prelude::*;

fn simplex(n: usize, m: usize) -> impl Strategy<Value = OrientedSimplex> {
    prop::collection::vec(prop::collection::vec(-2.0f64..2.0, m), n + 1)
        .prop_map(|v| OrientedSimplex::new(v.into_iter().map(|c| Point::new(c).unwrap()).collect()).unwrap())
        .prop_filter("non-degenerate", |s| s.mass() > 1e-4)
}

fn chain(n: usize, m: usize) -> impl Strategy<Value = SimplicialChain> {
    prop::collection::vec((prop_oneof![-3.0f64..-0.1, 0.1f64..3.0], simplex(n, m)), 1..5)
        .prop_map(move |t| SimplicialChain::from_terms(n, m, t).unwrap())
}

/// 1-form on the plane with coefficients of degree at most 2.
fn one_form() -> impl Strategy<Value = PolynomialForm> {
    prop::collection::vec(-1.0f64..1.0, 12).prop_map(|c| {
        let pows = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        let mut w = PolynomialForm::zero(1, 2);
        for comp in 0..2 {
            let mut p = Polynomial::zero(2);
            for (k, e) in pows.iter().enumerate() {
                p.add_term(e.to_vec(), c[6 * comp + k]);
            }
            w.add_wedge(&[comp], p).unwrap();
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(a in chain(3, 3)) {
        prop_assert!(a.boundary().unwrap().boundary().unwrap().collapse().is_empty());
    }

    #[test]
    fn green_on_random_triangles(a in chain(2, 2), w in one_form()) {
        let lhs = w.exterior_derivative().unwrap().integrate(&a).unwrap();
        let rhs = w.integrate(&a.boundary().unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn integration_is_linear(a in chain(1, 2), b in chain(1, 2), w in one_form(), t in -3.0f64..3.0) {
        let sum = w.integrate(&a.add(&b).unwrap()).unwrap();
        let parts = w.integrate(&a).unwrap() + w.integrate(&b).unwrap();
        prop_assert!((sum - parts).abs() <= 1e-12 * sum.abs().max(1.0));
        let scaled = w.integrate(&a.scaled(t)).unwrap();
        prop_assert!((scaled - t * w.integrate(&a).unwrap()).abs() <= 1e-12 * scaled.abs().max(1.0));
        let merged = w.integrate(&a.add(&a.negated()).unwrap().collapse()).unwrap();
        prop_assert_eq!(merged, 0.0);
    }

    #[test]
    fn reversal_negates(s in simplex(2, 3), w in prop::collection::vec(-1.0f64..1.0, 3)) {
        let mut f = PolynomialForm::zero(2, 3);
        for (i, ax) in coordinate_planes(3, 2).iter().enumerate() {
            f.add_wedge(ax, Polynomial::monomial(w[i], vec![1, 0, 1])).unwrap();
        }
        prop_assert!((f.integrate_simplex(&s) + f.integrate_simplex(&s.reversed())).abs() < 1e-14);
    }

    #[test]
    fn collapse_never_adds_mass(a in chain(1, 3)) {
        let mut doubled = a.clone();
        doubled.extend(a.scaled(-0.5)).unwrap();
        prop_assert!(term_mass(&doubled.collapse()) <= term_mass(&doubled) + 1e-12);
        let (value, residual) = flat_norm_eval(&a, &SimplicialChain::zero(2, 3)).unwrap();
        prop_assert!(value <= term_mass(&a) + 1e-12);
        prop_assert_eq!(value, residual);
    }

    #[test]
    fn projections_satisfy_pythagoras(s in simplex(2, 4)) {
        let parts: f64 = coordinate_planes(4, 2).iter().map(|ax| s.select(ax).raw_mass().powi(2)).sum();
        let full = s.raw_mass().powi(2);
        prop_assert!((parts - full).abs() <= 1e-9 * full.max(1.0));
    }

    #[test]
    fn json_round_trip_is_exact(a in chain(2, 3), w in one_form()) {
        let back: SimplicialChain = from_json_str(&to_json_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
        let back: PolynomialForm = from_json_str(&to_json_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }
}
