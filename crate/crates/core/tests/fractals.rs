//! Replica curve in R^3, binary approximators and the snowflake.

use natchain_core::forms::common;
use natchain_core::fractal::{
    binary_approximator, box_dimension, harrison_curve_chain, koch_chain, snowflake_curve, snowflake_region, CurveSpec,
};
use natchain_core::mass::term_mass;
use natchain_core::norms::natural_norm_eval;

#[test]
fn replica_box_dimension_near_similarity_dimension() {
    let (a, _) = harrison_curve_chain(3).unwrap();
    let (d, counts) = box_dimension(&a, 2..=5).unwrap();
    assert!((2.0..=2.3).contains(&d), "box dimension {d}, counts {counts:?}");
    assert!(counts.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn replica_levels_are_cycles_with_spanning_witness() {
    for k in 1..=2 {
        let (a, w) = harrison_curve_chain(k).unwrap();
        assert!(a.boundary().unwrap().collapse().is_empty());
        let b = natural_norm_eval(&a, 3.0, &w).unwrap();
        assert!(b.residual_masses.iter().all(|&r| r < 1e-12));
        assert!(b.value < 36.0);
        // the bound is far below the mass
        assert!(b.value < term_mass(&a));
    }
    assert!(harrison_curve_chain(4).is_err());
}

#[test]
fn binary_approximators_track_the_koch_limit() {
    let spec = CurveSpec::standard_koch();
    let limit = -3f64.sqrt() / 20.0;
    for k in 0..=12 {
        let b = binary_approximator(&spec, k).unwrap();
        let v = common::x_dy().integrate(&b).unwrap();
        assert!((v - limit).abs() <= 10.0 * 2f64.powi(-(k as i32)), "level {k}: {v}");
        // endpoints of the curve are lattice points
        let ends = b.boundary().unwrap().collapse();
        assert_eq!(ends.len(), 2);
    }
}

#[test]
fn binary_and_koch_agree_on_exact_forms() {
    // dx integrates to the displacement on every approximator
    let spec = CurveSpec::standard_koch();
    for k in 1..=8 {
        let b = binary_approximator(&spec, k).unwrap();
        assert!((common::dx(2, 0).integrate(&b).unwrap() - 1.0).abs() < 1e-12);
        assert!((common::dx(2, 0).integrate(&koch_chain(k).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn snowflake_area_and_perimeter() {
    // area of the base triangle times (1 + 3/5 (1 − (4/9)^k))
    let base = 3f64.sqrt() / 4.0;
    for k in 0..=6 {
        let r = snowflake_region(k).unwrap();
        let area = common::dx_dy().integrate(&r).unwrap();
        let want = base * (1.0 + 0.6 * (1.0 - (4.0f64 / 9.0).powi(k as i32)));
        assert!((area.abs() - want).abs() < 1e-13, "level {k}: {area} vs {want}");
        let c = snowflake_curve(k).unwrap();
        assert!((term_mass(&c) - 3.0 * (4.0f64 / 3.0).powi(k as i32)).abs() < 1e-11);
        assert!(c.boundary().unwrap().collapse().is_empty());
        // Green: the curve integral of x dy is the signed area
        let g = common::x_dy().integrate(&c).unwrap();
        assert!((g - area).abs() < 1e-13);
    }
}
