//! Independent reference values: tensor Gauss–Legendre quadrature on the
//! collapsed cube for simplex integrals, and closed forms for the Koch and
//! spiral sums.

use natchain_core::chain::coordinate_planes;
use natchain_core::fractal::{koch_chain, spiral::spiral_points, spiral_chain};
use natchain_core::forms::common;
use natchain_core::geometry::det;
use natchain_core::mass::term_mass;
use natchain_core::{OrientedSimplex, Polynomial, PolynomialForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gauss–Legendre nodes and weights on [0, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out
}

/// `∫` over the standard n-simplex of `f(λ_1..λ_n)` via the Duffy map.
fn duffy(n: usize, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let gl = gauss_legendre(10);
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    loop {
        let mut lam = vec![0.0; n];
        let (mut rest, mut jac, mut w) = (1.0, 1.0, 1.0);
        for d in 0..n {
            let (u, wu) = gl[idx[d]];
            lam[d] = rest * u;
            jac *= rest;
            rest *= 1.0 - u;
            w *= wu;
        }
        total += w * jac * f(&lam);
        let mut d = 0;
        while d < n {
            idx[d] += 1;
            if idx[d] < gl.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == n {
            break;
        }
    }
    total
}

/// `∫_σ p dx_I` from the parameterization `x = v0 + Σ λ_i (v_i − v0)`.
fn quad_form(s: &OrientedSimplex, axes: &[usize], p: &Polynomial) -> f64 {
    let v: Vec<&[f64]> = s.vertices().iter().map(|q| q.coords()).collect();
    let n = v.len() - 1;
    let rows: Vec<Vec<f64>> = axes.iter().map(|&a| (1..=n).map(|i| v[i][a] - v[0][a]).collect()).collect();
    let jac = det(&rows);
    jac * duffy(n, &|lam| {
        let x: Vec<f64> = (0..v[0].len()).map(|a| v[0][a] + (1..=n).map(|i| lam[i - 1] * (v[i][a] - v[0][a])).sum::<f64>()).collect();
        p.eval(&x)
    })
}

#[test]
fn gauss_legendre_is_exact_on_low_powers() {
    let gl = gauss_legendre(10);
    for k in 0..20 {
        let q: f64 = gl.iter().map(|&(x, w)| w * x.powi(k)).sum();
        assert!((q - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "power {k}");
    }
}

#[test]
fn monomials_up_to_degree_six_match_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..300 {
        let n = 1 + case % 3;
        let m = rng.gen_range(n..=3);
        let verts: Vec<Vec<f64>> = (0..=n).map(|_| (0..m).map(|_| rng.gen_range(-1.5..1.5)).collect()).collect();
        let rows: Vec<&[f64]> = verts.iter().map(|v| v.as_slice()).collect();
        let s = OrientedSimplex::from_coords(&rows).unwrap();
        let planes = coordinate_planes(m, n);
        let axes = &planes[rng.gen_range(0..planes.len())];
        let degree = rng.gen_range(0..=6u32);
        let mut powers = vec![0u32; m];
        for _ in 0..degree {
            powers[rng.gen_range(0..m)] += 1;
        }
        let p = Polynomial::monomial(rng.gen_range(-2.0..2.0), powers.clone());
        let w = PolynomialForm::zero(n, m).with(axes, p.clone()).unwrap();
        let got = w.integrate_simplex(&s);
        let want = quad_form(&s, axes, &p);
        assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0), "case {case}: {powers:?} on {axes:?}: {got} vs {want}");
    }
}

#[test]
fn frozen_triangle_moments() {
    // x^a y^b over the unit right triangle is a! b! / (a + b + 2)!
    let t = OrientedSimplex::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
    let w = PolynomialForm::zero(2, 2).with(&[0, 1], Polynomial::monomial(1.0, vec![2, 3])).unwrap();
    assert!((w.integrate_simplex(&t) - 1.0 / 420.0).abs() < 1e-16);
    let w = PolynomialForm::zero(2, 2).with(&[0, 1], Polynomial::monomial(1.0, vec![6, 0])).unwrap();
    assert!((w.integrate_simplex(&t) - 1.0 / 56.0).abs() < 1e-16);
}

/// `∫ x dy` along Koch level k is minus the area under the curve:
/// `Σ_{j=1}^{k} 4^{j−1} (√3/4) 9^{−j}`.
fn koch_area(k: usize) -> f64 {
    (1..=k).map(|j| 4f64.powi(j as i32 - 1) * 3f64.sqrt() / 4.0 / 9f64.powi(j as i32)).sum()
}

#[test]
fn koch_integrals_and_masses() {
    for k in 0..=7 {
        let a = koch_chain(k).unwrap();
        let got = common::x_dy().integrate(&a).unwrap();
        assert!((got + koch_area(k)).abs() < 1e-14, "level {k}");
        let want = (4.0f64 / 3.0).powi(k as i32);
        assert!((term_mass(&a) - want).abs() < 1e-12 * want);
    }
    // frozen limit −√3/20
    assert!((koch_area(60) - 3f64.sqrt() / 20.0).abs() < 1e-15);
}

/// Each half-arc with its diameter is half a regular 16-gon run
/// counterclockwise: `∫ x dy = 4 r² sin(π/8)`, length `16 r sin(π/16)`.
#[test]
fn spiral_sums() {
    for k in [2usize, 3, 10, 64] {
        let a = spiral_chain(k).unwrap();
        let (mut area, mut len) = (0.0, 0.0);
        for n in 1..k {
            let r = 0.5 * (1.0 / (n as f64).sqrt() + 1.0 / ((n + 1) as f64).sqrt());
            area += 4.0 * r * r * (std::f64::consts::PI / 8.0).sin();
            len += 16.0 * r * (std::f64::consts::PI / 16.0).sin();
        }
        let got = common::x_dy().integrate(&a).unwrap();
        assert!((got - area).abs() < 1e-12 * area, "k = {k}: {got} vs {area}");
        assert!((term_mass(&a) - len).abs() < 1e-12 * len);
        let pts = spiral_points(k).unwrap();
        assert_eq!(pts.len(), 1 + 8 * (k - 1));
    }
}
