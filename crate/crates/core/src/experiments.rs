//! One function per CLI experiment. Each builds its inputs, runs the
//! computation and returns an [`ExperimentReport`] with a verdict.

use serde_json::{json, Value};

use crate::chain::{coordinate_planes, OrientedSimplex, SimplicialChain};
use crate::complex::SpanningComplex;
use crate::error::{Error, Result};
use crate::forms::{common, form_norm, stokes_check, PolynomialForm};
use crate::fractal::{self, harrison, koch, ApproximatorSequence, Verdict};
use crate::geometry::{BoundingBox, Point};
use crate::lebesgue::{lebesgue_consistency, StepFunction};
use crate::mass::{term_mass, term_projected_mass};
use crate::norms::{flat_norm_bound, natural_norm_eval, natural_norm_search, whitney_integral_bound, SpanningWitness};
use crate::poly::Polynomial;
use crate::random;
use crate::report::{ExperimentReport, ReportVerdict};

pub const STOKES_TOL: f64 = 1e-9;
pub const WHITNEY_SLACK: f64 = 1e-9;
pub const LEBESGUE_TOL: f64 = 1e-12;
pub const PYTHAGORAS_TOL: f64 = 1e-9;
pub const LIMIT_TOL: f64 = 1e-4;
pub const FLAT_DISK_TOL: f64 = 0.05;

fn verdict(ok: bool) -> ReportVerdict {
    if ok {
        ReportVerdict::Pass
    } else {
        ReportVerdict::Fail
    }
}

/// Scale for relative residuals: the larger of the two sides, floored at 1.
fn rel_scale(a: f64, b: f64) -> f64 {
    1f64.max(a.abs()).max(b.abs())
}

fn stokes_sides(w: &PolynomialForm, a: &SimplicialChain) -> Result<(f64, f64)> {
    let lhs = w.exterior_derivative()?.integrate(a)?;
    let rhs = w.integrate(&a.boundary()?)?;
    Ok((lhs, rhs))
}

/// `∫_A dω` against `∫_{∂A} ω` for one chain and one (n−1)-form.
pub fn stokes(a: &SimplicialChain, w: &PolynomialForm, tol: f64) -> Result<ExperimentReport> {
    let residual = stokes_check(w, a)?;
    let (lhs, rhs) = stokes_sides(w, a)?;
    let rel = residual / rel_scale(lhs, rhs);
    let mut r = ExperimentReport::new("stokes", &[]);
    r.param("n", a.dim()).param("m", a.ambient()).param("terms", a.len()).tol("relative", tol);
    r.set("lhs", lhs).set("rhs", rhs).set("residual", residual).set("relative", rel);
    r.verdict = verdict(rel <= tol);
    Ok(r)
}

/// Random chains with `n ∈ {1, 2}` in `ℝ^2` or `ℝ^3` against random
/// (n−1)-forms with coefficients of degree at most 3.
pub fn stokes_random(cases: usize, seed: u64, tol: f64) -> Result<ExperimentReport> {
    let mut rng = random::rng(seed);
    let mut r = ExperimentReport::new("stokes", &["case", "n", "m", "lhs", "rhs", "residual", "relative"]);
    r.param("cases", cases).param("seed", seed).param("max_degree", 3).tol("relative", tol);
    let mut worst: f64 = 0.0;
    for case in 0..cases {
        let (n, m) = [(1, 2), (1, 3), (2, 2), (2, 3)][case % 4];
        let a = random::chain(&mut rng, n, m, 4);
        let w = random::form(&mut rng, n - 1, m, 3);
        let (lhs, rhs) = stokes_sides(&w, &a)?;
        let residual = (lhs - rhs).abs();
        let rel = residual / rel_scale(lhs, rhs);
        worst = worst.max(rel);
        r.row(vec![json!(case), json!(n), json!(m), json!(lhs), json!(rhs), json!(residual), json!(rel)])?;
    }
    r.set("max_relative", worst);
    r.verdict = verdict(worst <= tol);
    Ok(r)
}

/// `∫_A ω` for one chain and one form of matching degree.
pub fn integrate(a: &SimplicialChain, w: &PolynomialForm) -> Result<ExperimentReport> {
    let value = w.integrate(a)?;
    let mut r = ExperimentReport::new("integrate", &[]);
    r.param("n", a.dim()).param("m", a.ambient()).param("terms", a.len());
    r.set("integral", value).set("mass", term_mass(a));
    r.verdict = ReportVerdict::Pass;
    Ok(r)
}

/// `|∫_A ω| ≤ M(A − ∂C)‖ω‖₀ + M(C)‖dω‖₀` on random triples. Odd cases
/// take `A = ∂C + E` with a small random E so that the spanning term
/// carries most of the bound.
pub fn whitney_random(cases: usize, seed: u64, slack: f64) -> Result<ExperimentReport> {
    let mut rng = random::rng(seed);
    let mut r = ExperimentReport::new("integrate", &["case", "n", "m", "integral", "bound", "margin"]);
    r.param("cases", cases).param("seed", seed).tol("slack", slack);
    let mut violations = 0usize;
    for case in 0..cases {
        let (n, m) = [(1, 2), (1, 3), (2, 3)][case % 3];
        let c = random::chain(&mut rng, n + 1, m, 3);
        let a = if case % 2 == 1 {
            let mut a = c.boundary()?;
            a.extend(random::chain(&mut rng, n, m, 2).scaled(0.1))?;
            a
        } else {
            random::chain(&mut rng, n, m, 4)
        };
        let w = random::form(&mut rng, n, m, 3);
        let integral = w.integrate(&a)?;
        let bound = whitney_integral_bound(&a, &c, &w)?;
        let margin = bound + slack - integral.abs();
        if margin < 0.0 {
            violations += 1;
        }
        r.row(vec![json!(case), json!(n), json!(m), json!(integral), json!(bound), json!(margin)])?;
    }
    r.set("violations", violations);
    r.verdict = verdict(violations == 0);
    Ok(r)
}

fn lebesgue_row(f: &StepFunction) -> Result<(f64, f64, f64, f64)> {
    let t = lebesgue_consistency(f)?;
    Ok((t.closed_form, t.area, t.boundary, t.max_discrepancy()))
}

pub fn lebesgue(f: &StepFunction, tol: f64) -> Result<ExperimentReport> {
    let (c, a, b, d) = lebesgue_row(f)?;
    let mut r = ExperimentReport::new("lebesgue", &[]);
    r.param("pieces", f.pieces().len()).tol("absolute", tol);
    r.set("closed_form", c).set("area", a).set("boundary", b).set("discrepancy", d);
    r.verdict = verdict(d <= tol);
    Ok(r)
}

pub fn lebesgue_random(cases: usize, seed: u64, tol: f64) -> Result<ExperimentReport> {
    let mut rng = random::rng(seed);
    let mut r = ExperimentReport::new("lebesgue", &["case", "pieces", "closed_form", "area", "boundary", "discrepancy"]);
    r.param("cases", cases).param("seed", seed).tol("absolute", tol);
    let mut worst: f64 = 0.0;
    for case in 0..cases {
        let f = random::step_function(&mut rng, 8);
        let (c, a, b, d) = lebesgue_row(&f)?;
        worst = worst.max(d);
        r.row(vec![json!(case), json!(f.pieces().len()), json!(c), json!(a), json!(b), json!(d)])?;
    }
    r.set("max_discrepancy", worst);
    r.verdict = verdict(worst <= tol);
    Ok(r)
}

/// Natural-norm bound of one chain: evaluated on a given witness, searched
/// on a complex, or the zero witness when neither is given.
pub fn norm(
    a: &SimplicialChain,
    lambda: f64,
    witness: Option<&SpanningWitness>,
    complex: Option<&SpanningComplex>,
    budget: usize,
) -> Result<ExperimentReport> {
    let (b, source) = match (witness, complex) {
        (Some(w), _) => (natural_norm_eval(a, lambda, w)?, "witness"),
        (None, Some(k)) => (natural_norm_search(a, lambda, k, budget)?, "search"),
        (None, None) => (natural_norm_eval(a, lambda, &SpanningWitness::zero(lambda))?, "zero"),
    };
    let mut r = ExperimentReport::new("norm", &["plane", "residual_mass", "contribution"]);
    r.param("n", a.dim()).param("m", a.ambient()).param("lambda", lambda).param("source", source);
    if complex.is_some() && witness.is_none() {
        r.param("budget", budget);
    }
    for (i, (res, c)) in b.residual_masses.iter().zip(&b.contributions).enumerate() {
        r.row(vec![json!(i), json!(res), json!(c)])?;
    }
    r.set("value", b.value).set("mass", term_mass(a)).set("witness_depth", b.witness.depth());
    r.set("witness", &b.witness);
    r.verdict = ReportVerdict::Pass;
    Ok(r)
}

fn star_polygon(rng: &mut random::CaseRng) -> Vec<[f64; 2]> {
    use rand::Rng;
    let k = rng.gen_range(4..=7);
    (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * (i as f64 + 0.8 * rng.gen_range(0.0..1.0)) / k as f64;
            let rad = rng.gen_range(0.5..1.0);
            [rad * t.cos(), rad * t.sin()]
        })
        .collect()
}

fn fan(poly: &[[f64; 2]]) -> Vec<[[f64; 2]; 3]> {
    (0..poly.len()).map(|i| [[0.0, 0.0], poly[i], poly[(i + 1) % poly.len()]]).collect()
}

fn mid(p: [f64; 2], q: [f64; 2]) -> [f64; 2] {
    [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]
}

/// Each triangle split into four by its edge midpoints, orientation kept.
fn subdivide(tris: &[[[f64; 2]; 3]]) -> Vec<[[f64; 2]; 3]> {
    let mut out = Vec::with_capacity(4 * tris.len());
    for &[a, b, c] in tris {
        let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
        out.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    out
}

fn triangle(t: &[[f64; 2]; 3]) -> Result<OrientedSimplex> {
    OrientedSimplex::new(t.iter().map(|p| Point::from_vec_unchecked(p.to_vec())).collect())
}

fn planar_complex(tris: &[[[f64; 2]; 3]]) -> Result<SpanningComplex> {
    SpanningComplex::new(1, 2, tris.iter().map(triangle).collect::<Result<Vec<_>>>()?)
}

/// Boundary of the regular `sides`-gon inscribed in the unit circle and the
/// fan triangulation of its disk, midpoint-subdivided `refinements` times.
pub fn polygon_disk(sides: usize, refinements: usize) -> Result<(SimplicialChain, SpanningComplex)> {
    if sides < 3 {
        return Err(Error::InvalidArgument("a polygon needs at least 3 sides".into()));
    }
    let poly: Vec<[f64; 2]> = (0..sides)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / sides as f64;
            [t.cos(), t.sin()]
        })
        .collect();
    let mut tris = fan(&poly);
    for _ in 0..refinements {
        tris = subdivide(&tris);
    }
    let mut a = SimplicialChain::zero(1, 2);
    for i in 0..sides {
        let e = [poly[i], poly[(i + 1) % sides]];
        a.push(1.0, OrientedSimplex::new(e.iter().map(|p| Point::from_vec_unchecked(p.to_vec())).collect())?)?;
    }
    Ok((a, planar_complex(&tris)?))
}

/// Flat-norm bound of a chain over a complex.
pub fn flatnorm(a: &SimplicialChain, k: &SpanningComplex) -> Result<ExperimentReport> {
    let b = flat_norm_bound(a, k)?;
    let mut r = ExperimentReport::new("flatnorm", &[]);
    r.param("n", a.dim()).param("m", a.ambient()).param("complex_cells", k.cells(1).len());
    r.set("value", b.value).set("mass", term_mass(a)).set("residual_mass", b.residual_masses.first().copied().unwrap_or(0.0));
    r.set("witness", &b.witness);
    r.verdict = ReportVerdict::Pass;
    Ok(r)
}

/// Flat norm of the boundary of a regular polygon over its subdivided fan
/// complex, against the disk area `π`.
pub fn flatnorm_polygon(sides: usize, refinements: usize, tol: f64) -> Result<ExperimentReport> {
    let (a, k) = polygon_disk(sides, refinements)?;
    let b = flat_norm_bound(&a, &k)?;
    let err = (b.value - std::f64::consts::PI).abs() / std::f64::consts::PI;
    let mut r = ExperimentReport::new("flatnorm", &[]);
    r.param("sides", sides).param("refinements", refinements).param("triangles", k.cells(1).len()).tol("relative", tol);
    r.set("value", b.value).set("reference", std::f64::consts::PI).set("relative_error", err);
    r.set("perimeter", term_mass(&a)).set("residual_mass", b.residual_masses[0]);
    r.verdict = verdict(err <= tol);
    Ok(r)
}

/// `∂∂ = 0` on random chains, `M(σ)² = Σ_I M(π_I σ)²` on random simplices,
/// and flat-norm bounds that do not increase when a planar complex is
/// midpoint-subdivided.
pub fn structural(chains: usize, simplices: usize, nested: usize, seed: u64, tol: f64) -> Result<ExperimentReport> {
    use rand::Rng;
    let mut rng = random::rng(seed);
    let mut r = ExperimentReport::new("norm", &["suite", "case", "value", "reference", "error"]);
    r.param("chains", chains).param("simplices", simplices).param("nested", nested).param("seed", seed);
    r.tol("pythagoras_relative", tol).tol("monotonicity", tol);
    let mut failures = [0usize; 3];
    for case in 0..chains {
        let (n, m) = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)][case % 5];
        let a = random::chain(&mut rng, n, m, 4);
        let dd = a.boundary()?.boundary()?.collapse();
        if !dd.is_empty() {
            failures[0] += 1;
        }
        r.row(vec![json!("boundary_squared"), json!(case), json!(term_mass(&dd)), json!(0.0), json!(dd.len())])?;
    }
    for case in 0..simplices {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(n.max(2)..=4);
        let s = random::simplex(&mut rng, n, m);
        let full = s.raw_mass().powi(2);
        let parts: f64 = coordinate_planes(m, n).iter().map(|ax| s.select(ax).raw_mass().powi(2)).sum();
        let err = (full - parts).abs() / full.max(1.0);
        if err > tol {
            failures[1] += 1;
        }
        r.row(vec![json!("pythagoras"), json!(case), json!(parts), json!(full), json!(err)])?;
    }
    for case in 0..nested {
        let tris = fan(&star_polygon(&mut rng));
        let coarse = planar_complex(&tris)?;
        let fine = planar_complex(&subdivide(&tris))?;
        let edges = coarse.cells(0);
        let mut a = SimplicialChain::zero(1, 2);
        for _ in 0..rng.gen_range(2..=5) {
            let c: f64 = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            a.push(c, edges[rng.gen_range(0..edges.len())].clone())?;
        }
        let a = a.collapse();
        let vc = flat_norm_bound(&a, &coarse)?.value;
        let vf = flat_norm_bound(&a, &fine)?.value;
        if vf > vc + tol {
            failures[2] += 1;
        }
        r.row(vec![json!("monotonicity"), json!(case), json!(vf), json!(vc), json!(vf - vc)])?;
    }
    r.set("boundary_squared_failures", failures[0]);
    r.set("pythagoras_failures", failures[1]);
    r.set("monotonicity_failures", failures[2]);
    r.verdict = verdict(failures.iter().all(|&f| f == 0));
    Ok(r)
}

fn limit_verdict(v: Verdict) -> ReportVerdict {
    match v {
        Verdict::Converged => ReportVerdict::Pass,
        Verdict::Cauchy => ReportVerdict::Fail,
        Verdict::Diverged => ReportVerdict::Diverged,
    }
}

fn opt(v: Option<f64>) -> Value {
    v.map_or(Value::Null, |x| json!(x))
}

/// `∫ x dy` along Koch levels `0..=max_level` with its limit diagnostics,
/// and on levels `1..=ratio_levels` the ratio of the integral to the
/// natural-norm bound at `λ = 2` times the sampled `C^1` norm of `x dy`.
pub fn koch_convergence(max_level: usize, ratio_levels: usize, tol: f64) -> Result<ExperimentReport> {
    if ratio_levels < 1 || ratio_levels > max_level {
        return Err(Error::InvalidArgument("ratio levels must lie in 1..=max level".into()));
    }
    let w = common::x_dy();
    let seq = ApproximatorSequence::koch(0..=max_level, None)?;
    let (value, diag) = fractal::limit_integral(&w, &seq, tol)?;
    let form = form_norm(&w, 1, 0.0, &BoundingBox::unit(2), 64)?.value;
    let mut r = ExperimentReport::new("koch-convergence", &["k", "integral", "delta", "mass", "mass_ratio", "natural_bound", "ratio"]);
    r.param("max_level", max_level).param("ratio_levels", ratio_levels).param("lambda", 2.0).param("form", "x dy");
    r.param("scale", koch::STANDARD_SCALE).tol("final_delta", tol).tol("ratio_growth", 2.0);
    let mut ratios = Vec::new();
    let mut mass_ok = true;
    for (i, level) in seq.levels.iter().enumerate() {
        let k = level.k;
        let mass = term_mass(&level.chain);
        let mass_ratio = mass / (4.0f64 / 3.0).powi(k as i32);
        mass_ok &= (mass_ratio - 1.0).abs() <= 1e-9;
        let (bound, ratio) = if (1..=ratio_levels).contains(&k) {
            let b = natural_norm_eval(&level.chain, 2.0, &koch::koch_witness(k, 2.0)?)?.value;
            let q = diag.integrals[i].abs() / (b * form);
            ratios.push(q);
            (Some(b), Some(q))
        } else {
            (None, None)
        };
        let delta = if i == 0 { None } else { Some(diag.deltas[i - 1]) };
        r.row(vec![json!(k), json!(diag.integrals[i]), opt(delta), json!(mass), json!(mass_ratio), opt(bound), opt(ratio)])?;
    }
    let ratio_ok = ratios.iter().all(|&q| q <= 2.0 * ratios[0]);
    let final_delta = *diag.deltas.last().unwrap();
    r.set("limit", value).set("fitted_ratio", diag.ratio).set("final_delta", final_delta);
    r.set("limit_verdict", diag.verdict).set("form_norm", form).set("ratio_bounded", ratio_ok).set("mass_growth", mass_ok);
    r.verdict = if diag.verdict == Verdict::Converged && diag.ratio < 1.0 && final_delta <= tol && ratio_ok && mass_ok {
        ReportVerdict::Pass
    } else {
        limit_verdict(diag.verdict).max_fail()
    };
    Ok(r)
}

impl ReportVerdict {
    /// `Pass` demoted to `Fail`; other verdicts kept.
    fn max_fail(self) -> Self {
        if self == ReportVerdict::Pass {
            ReportVerdict::Fail
        } else {
            self
        }
    }
}

/// `∫ x dy` along spiral truncations with `2^{j+1}` crossings for
/// `j = 1..=levels`. Divergence is the expected outcome.
pub fn spiral_divergence(levels: usize, tol: f64) -> Result<ExperimentReport> {
    if levels < 2 {
        return Err(Error::InvalidArgument("spiral divergence needs at least 2 levels".into()));
    }
    let ks: Vec<usize> = (1..=levels).map(|j| 1usize << (j + 1)).collect();
    let seq = ApproximatorSequence::spiral(ks)?;
    let (value, diag) = fractal::limit_integral(&common::x_dy(), &seq, tol)?;
    let mut r = ExperimentReport::new("spiral-divergence", &["crossings", "integral", "delta", "mass"]);
    r.param("levels", levels).param("form", "x dy").tol("final_delta", tol);
    for (i, level) in seq.levels.iter().enumerate() {
        let delta = if i == 0 { None } else { Some(diag.deltas[i - 1]) };
        r.row(vec![json!(level.k), json!(diag.integrals[i]), opt(delta), json!(term_mass(&level.chain))])?;
    }
    r.set("last_integral", value).set("fitted_ratio", diag.ratio).set("limit_verdict", diag.verdict);
    r.verdict = limit_verdict(diag.verdict);
    r.expected = ReportVerdict::Diverged;
    Ok(r)
}

/// Witness bounds of the replica curve at each level: plane masses of the
/// C_j, masses of the D_ij, per-plane contributions and the total.
pub fn harrison_bound(levels: &[usize]) -> Result<ExperimentReport> {
    if levels.is_empty() {
        return Err(Error::InvalidArgument("no levels given".into()));
    }
    let mut r = ExperimentReport::new(
        "harrison-bound",
        &["k", "plane", "plane_mass", "max_cone_mass", "residual_mass", "contribution", "total"],
    );
    r.param("levels", levels).param("lambda", 3.0).param("replicas", harrison::REPLICAS);
    r.tol("plane_mass", 1.0).tol("cone_mass", 1.0).tol("contribution", 12.0).tol("total", 36.0);
    let mut ok = true;
    let mut last = None;
    for &k in levels {
        let (a, w) = fractal::harrison_curve_chain(k)?;
        let b = natural_norm_eval(&a, 3.0, &w)?;
        ok &= b.value < 36.0;
        for (j, p) in w.planes.iter().enumerate() {
            let axes = &coordinate_planes(3, 2)[j];
            let pm = term_projected_mass(&p.chain, axes, 2.0);
            let cm = p.children.iter().map(|d| term_mass(&d.chain)).fold(0.0, f64::max);
            ok &= pm < 1.0 && cm < 1.0 && b.contributions[j] < 12.0;
            r.row(vec![json!(k), json!(j), json!(pm), json!(cm), json!(b.residual_masses[j]), json!(b.contributions[j]), json!(b.value)])?;
        }
        last = Some(a);
    }
    if let Some(a) = last {
        let (d, counts) = fractal::box_dimension(&a, 2..=5)?;
        r.set("box_dimension", d).set("box_counts", counts);
    }
    r.set("similarity_dimension", harrison::similarity_dimension());
    r.verdict = verdict(ok);
    Ok(r)
}

/// `x² y dx + x y² dy`.
pub fn default_snowflake_form() -> PolynomialForm {
    PolynomialForm::zero(1, 2)
        .with(&[0], Polynomial::monomial(1.0, vec![2, 1]))
        .and_then(|w| w.with(&[1], Polynomial::monomial(1.0, vec![1, 2])))
        .expect("valid 1-form on the plane")
}

/// Stokes on snowflake regions `0..=max_level` for a 1-form, with limit
/// diagnostics of the boundary integrals.
pub fn snowflake_stokes(max_level: usize, w: &PolynomialForm, tol: f64) -> Result<ExperimentReport> {
    if w.degree() != 1 || w.ambient() != 2 {
        return Err(Error::Dimension("snowflake Stokes needs a 1-form on the plane".into()));
    }
    if max_level < 2 {
        return Err(Error::InvalidArgument("snowflake Stokes needs at least 3 levels".into()));
    }
    let dw = w.exterior_derivative()?;
    let mut r = ExperimentReport::new("snowflake-stokes", &["k", "area_integral", "boundary_integral", "residual", "relative"]);
    r.param("max_level", max_level).tol("relative", tol);
    let mut worst: f64 = 0.0;
    let mut integrals = Vec::new();
    for k in 0..=max_level {
        let region = fractal::snowflake_region(k)?;
        let lhs = dw.integrate(&region)?;
        let rhs = w.integrate(&region.boundary()?)?;
        let rel = (lhs - rhs).abs() / rel_scale(lhs, rhs);
        worst = worst.max(rel);
        integrals.push(rhs);
        r.row(vec![json!(k), json!(lhs), json!(rhs), json!((lhs - rhs).abs()), json!(rel)])?;
    }
    let diag = fractal::diagnose((0..=max_level).collect(), integrals, LIMIT_TOL);
    r.set("max_relative", worst).set("fitted_ratio", diag.ratio).set("limit_verdict", diag.verdict);
    r.verdict = verdict(worst <= tol && diag.verdict != Verdict::Diverged);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_complex_sizes() {
        let (a, k) = polygon_disk(64, 1).unwrap();
        assert_eq!((a.len(), k.cells(1).len()), (64, 256));
        assert!(a.boundary().unwrap().collapse().is_empty());
        assert!(polygon_disk(2, 0).is_err());
    }

    #[test]
    fn snowflake_small() {
        let r = snowflake_stokes(4, &default_snowflake_form(), STOKES_TOL).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert_eq!(r.verdict, ReportVerdict::Pass);
        assert!(snowflake_stokes(4, &common::dx_dy(), STOKES_TOL).is_err());
    }

    #[test]
    fn argument_checks() {
        assert!(koch_convergence(5, 6, LIMIT_TOL).is_err());
        assert!(spiral_divergence(1, LIMIT_TOL).is_err());
        assert!(harrison_bound(&[]).is_err());
        assert!(harrison_bound(&[4]).is_err());
    }

    #[test]
    fn single_cases() {
        let sq = SimplicialChain::from_terms(
            2,
            2,
            [
                (1.0, OrientedSimplex::from_coords(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]).unwrap()),
                (1.0, OrientedSimplex::from_coords(&[&[0.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]]).unwrap()),
            ],
        )
        .unwrap();
        let r = stokes(&sq, &common::x_dy(), STOKES_TOL).unwrap();
        assert_eq!(r.summary["residual"].as_f64(), Some(0.0));
        let r = norm(&sq.boundary().unwrap(), 2.0, None, None, 10).unwrap();
        assert_eq!(r.summary["value"].as_f64(), Some(4.0));
        let r = integrate(&sq, &common::dx_dy()).unwrap();
        assert_eq!(r.summary["integral"].as_f64(), Some(1.0));
    }
}
