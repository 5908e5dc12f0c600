//! Polynomial differential forms: exterior derivative, exact integration
//! over simplicial chains, and sampled Hölder-type norms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::geometry::{det, BoundingBox};
use crate::poly::Polynomial;

/// `ω = Σ_I ω_I dx_I` over increasing 0-based multi-indices `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialForm {
    degree: usize,
    ambient: usize,
    components: BTreeMap<Vec<usize>, Polynomial>,
}

impl PolynomialForm {
    pub fn zero(degree: usize, ambient: usize) -> Self {
        Self { degree, ambient, components: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn function(p: Polynomial) -> Self {
        let mut f = Self::zero(0, p.nvars());
        f.components.insert(vec![], p);
        f.components.retain(|_, p| !p.is_zero());
        f
    }

    /// Adds `p dx_{i_1} ∧ … ∧ dx_{i_n}` for an arbitrary (not necessarily
    /// increasing) index list; repeated indices give zero.
    pub fn add_wedge(&mut self, indices: &[usize], p: Polynomial) -> Result<()> {
        if indices.len() != self.degree {
            return Err(Error::Dimension(format!(
                "{} indices for a {}-form",
                indices.len(),
                self.degree
            )));
        }
        if p.nvars() != self.ambient || indices.iter().any(|&i| i >= self.ambient) {
            return Err(Error::Dimension(format!("component outside R^{}", self.ambient)));
        }
        let mut idx = indices.to_vec();
        let mut sign = 1.0;
        for i in 0..idx.len() {
            for j in 0..idx.len() - 1 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Ok(());
        }
        let entry = self.components.entry(idx.clone()).or_insert_with(|| Polynomial::zero(self.ambient));
        *entry = entry.add(&p.scale(sign));
        if entry.is_zero() {
            self.components.remove(&idx);
        }
        Ok(())
    }

    pub fn with(mut self, indices: &[usize], p: Polynomial) -> Result<Self> {
        self.add_wedge(indices, p)?;
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.degree, self.ambient);
        for (i, p) in &self.components {
            let q = p.scale(s);
            if !q.is_zero() {
                out.components.insert(i.clone(), q);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree || self.ambient != other.ambient {
            return Err(Error::Dimension("forms of different degree or ambient".into()));
        }
        let mut out = self.clone();
        for (i, p) in &other.components {
            out.add_wedge(i, p.clone())?;
        }
        Ok(out)
    }

    /// Maximum polynomial degree over components.
    pub fn poly_degree(&self) -> u32 {
        self.components.values().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// `dω = Σ_I Σ_v ∂_v ω_I dx_v ∧ dx_I`.
    pub fn exterior_derivative(&self) -> Result<Self> {
        if self.degree >= self.ambient {
            return Err(Error::Dimension(format!(
                "d of a {}-form on R^{} would have degree {}",
                self.degree,
                self.ambient,
                self.degree + 1
            )));
        }
        let mut out = Self::zero(self.degree + 1, self.ambient);
        for (i, p) in &self.components {
            for v in 0..self.ambient {
                if i.contains(&v) {
                    continue;
                }
                let dp = p.derivative(v);
                if dp.is_zero() {
                    continue;
                }
                let mut idx = vec![v];
                idx.extend(i);
                out.add_wedge(&idx, dp)?;
            }
        }
        Ok(out)
    }

    /// Exact `∫_σ ω` by pulling back through the affine parameterization
    /// `p_0 + Σ t_a (p_a − p_0)` onto the standard simplex.
    pub fn integrate_simplex(&self, s: &OrientedSimplex) -> f64 {
        let n = s.dim();
        let p0 = s.vertices()[0].coords();
        if n == 0 {
            return self.components.get(&Vec::new()).map_or(0.0, |p| p.eval(p0));
        }
        let edges = s.edge_vectors();
        // linear[v][a] = (p_a − p_0)_v
        let linear: Vec<Vec<f64>> = (0..self.ambient).map(|v| edges.iter().map(|e| e[v]).collect()).collect();
        let mut total = 0.0;
        for (idx, p) in &self.components {
            let rows: Vec<Vec<f64>> = idx.iter().map(|&v| linear[v].clone()).collect();
            let jac = det(&rows);
            if jac == 0.0 {
                continue;
            }
            total += jac * p.compose_affine(p0, &linear, n).integrate_standard_simplex();
        }
        total
    }

    fn check_chain(&self, a: &SimplicialChain) -> Result<()> {
        if a.dim() != self.degree || a.ambient() != self.ambient {
            return Err(Error::Dimension(format!(
                "{}-form on R^{} integrated over a {}-chain in R^{}",
                self.degree,
                self.ambient,
                a.dim(),
                a.ambient()
            )));
        }
        Ok(())
    }

    /// `∫_A ω = Σ a_i ∫_{σ_i} ω`, summed in term order.
    pub fn integrate(&self, a: &SimplicialChain) -> Result<f64> {
        self.check_chain(a)?;
        Ok(a.terms().iter().map(|t| t.coef * self.integrate_simplex(&t.simplex)).sum())
    }

    /// Pointwise Euclidean norm of the coefficient vector `(∂^β ω_I(x))_I`.
    fn pointwise(parts: &[Polynomial], x: &[f64]) -> f64 {
        parts.iter().map(|p| p.eval(x).powi(2)).sum::<f64>().sqrt()
    }

    /// Rigorous upper bound of `sup_box |ω|`, where `|ω(x)|` is the
    /// Euclidean norm of the component vector. This dominates
    /// `|∫_σ ω| / M_n(σ)` for every simplex in the box.
    pub fn sup_bound(&self, bbox: &BoundingBox) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let parts: Vec<Polynomial> = self.components.values().cloned().collect();
        let res = grid_resolution_cap(16, self.ambient);
        let (sampled, h) = sample_max(bbox, res, |x| Self::pointwise(&parts, x));
        let lipschitz = parts
            .iter()
            .map(|p| (0..self.ambient).map(|v| p.derivative(v).abs_bound(&bbox.lo, &bbox.hi).powi(2)).sum::<f64>())
            .sum::<f64>()
            .sqrt();
        sampled + 0.5 * h * lipschitz
    }
}

/// Sampled `C^{k,α}` norm of a form on a box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormNorm {
    pub k: usize,
    pub alpha: f64,
    #[serde(rename = "box")]
    pub bbox: BoundingBox,
    pub value: f64,
    pub grid_resolution: usize,
}

fn multi_indices(m: usize, max_order: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; m]];
    for _ in 0..max_order {
        let mut next = Vec::new();
        for b in &out {
            for v in 0..m {
                let mut c = b.clone();
                c[v] += 1;
                if !next.contains(&c) && !out.contains(&c) {
                    next.push(c);
                }
            }
        }
        out.extend(next);
    }
    out
}

fn grid_resolution_cap(res: usize, m: usize) -> usize {
    // keep (res + 1)^m below ~2.2e6 samples
    let cap = (2.2e6f64).powf(1.0 / m as f64).floor() as usize - 1;
    res.min(cap).max(1)
}

/// Largest value of `f` on the regular grid with `res` cells per axis, and
/// the largest cell diagonal.
fn sample_max(bbox: &BoundingBox, res: usize, f: impl Fn(&[f64]) -> f64) -> (f64, f64) {
    let m = bbox.dim();
    let mut best: f64 = 0.0;
    let mut idx = vec![0usize; m];
    let mut x = vec![0.0; m];
    loop {
        for v in 0..m {
            x[v] = bbox.lo[v] + (bbox.hi[v] - bbox.lo[v]) * idx[v] as f64 / res as f64;
        }
        best = best.max(f(&x));
        let mut v = 0;
        while v < m {
            idx[v] += 1;
            if idx[v] <= res {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
        if v == m {
            break;
        }
    }
    (best, bbox.diameter() / res as f64)
}

/// `max_{|β| ≤ k} sup |∂^β ω|` sampled on a grid, plus for `alpha > 0` the
/// largest sampled Hölder quotient `|∂^β ω(x) − ∂^β ω(y)| / |x − y|^α` of
/// the order-k derivatives over axis-aligned grid pairs at dyadic spacings.
/// Sampling makes this a lower estimate of the true norm.
pub fn form_norm(w: &PolynomialForm, k: usize, alpha: f64, bbox: &BoundingBox, grid_resolution: usize) -> Result<FormNorm> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("Hölder exponent {alpha} outside [0, 1)")));
    }
    if bbox.dim() != w.ambient() {
        return Err(Error::Dimension("box and form ambient differ".into()));
    }
    if grid_resolution == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive".into()));
    }
    let res = grid_resolution_cap(grid_resolution, w.ambient());
    let m = w.ambient();
    let mut value: f64 = 0.0;
    if !w.is_zero() {
        for beta in multi_indices(m, k) {
            let parts: Vec<Polynomial> = w.components.values().map(|p| p.partial(&beta)).collect();
            let (s, _) = sample_max(bbox, res, |x| PolynomialForm::pointwise(&parts, x));
            value = value.max(s);
        }
        if alpha > 0.0 {
            let mut holder: f64 = 0.0;
            for beta in multi_indices(m, k).into_iter().filter(|b| b.iter().sum::<u32>() as usize == k) {
                let parts: Vec<Polynomial> = w.components.values().map(|p| p.partial(&beta)).collect();
                for axis in 0..m {
                    let width = bbox.hi[axis] - bbox.lo[axis];
                    let mut step = 1;
                    while step <= res && width > 0.0 {
                        let dist = width * step as f64 / res as f64;
                        let (q, _) = sample_max(bbox, res, |x| {
                            let mut y = x.to_vec();
                            y[axis] += dist;
                            if y[axis] > bbox.hi[axis] + 1e-12 * width {
                                return 0.0;
                            }
                            let diff: f64 = parts.iter().map(|p| (p.eval(x) - p.eval(&y)).powi(2)).sum::<f64>().sqrt();
                            diff / dist.powf(alpha)
                        });
                        holder = holder.max(q);
                        step *= 2;
                    }
                }
            }
            value += holder;
        }
    }
    Ok(FormNorm { k, alpha, bbox: bbox.clone(), value, grid_resolution: res })
}

/// [`form_norm`] starting at 64 cells per axis and doubling until two
/// successive estimates agree within 1% (or the sample cap is reached).
pub fn form_norm_adaptive(w: &PolynomialForm, k: usize, alpha: f64, bbox: &BoundingBox) -> Result<FormNorm> {
    let mut res = 64;
    let mut prev = form_norm(w, k, alpha, bbox, res)?;
    loop {
        let next_res = grid_resolution_cap(res * 2, w.ambient());
        if next_res <= prev.grid_resolution {
            return Ok(prev);
        }
        let next = form_norm(w, k, alpha, bbox, next_res)?;
        if (next.value - prev.value).abs() <= 0.01 * next.value.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        res = next_res;
        prev = next;
    }
}

/// `|∫_A dω − ∫_{∂A} ω|` for an (n−1)-form ω and an n-chain A.
pub fn stokes_check(w: &PolynomialForm, a: &SimplicialChain) -> Result<f64> {
    if w.degree() + 1 != a.dim() {
        return Err(Error::Dimension(format!("{}-form against a {}-chain", w.degree(), a.dim())));
    }
    let dw = w.exterior_derivative()?;
    let lhs = dw.integrate(a)?;
    let rhs = w.integrate(&a.boundary()?)?;
    Ok((lhs - rhs).abs())
}

/// Common forms on ℝᵐ.
pub mod common {
    use super::*;

    /// `dx_i` (0-based).
    pub fn dx(m: usize, i: usize) -> PolynomialForm {
        PolynomialForm::zero(1, m).with(&[i], Polynomial::constant(m, 1.0)).unwrap()
    }

    /// `x_i dx_j`.
    pub fn xi_dxj(m: usize, i: usize, j: usize) -> PolynomialForm {
        PolynomialForm::zero(1, m).with(&[j], Polynomial::var(m, i)).unwrap()
    }

    /// `x dy` on ℝ².
    pub fn x_dy() -> PolynomialForm {
        xi_dxj(2, 0, 1)
    }

    /// `y dx` on ℝ².
    pub fn y_dx() -> PolynomialForm {
        xi_dxj(2, 1, 0)
    }

    /// `(−y dx + x dy) / 2` on ℝ².
    pub fn area_form_1() -> PolynomialForm {
        x_dy().scale(0.5).add(&y_dx().scale(-0.5)).unwrap()
    }

    /// `dx ∧ dy` on ℝ².
    pub fn dx_dy() -> PolynomialForm {
        PolynomialForm::zero(2, 2).with(&[0, 1], Polynomial::constant(2, 1.0)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::common::*;
    use super::*;

    fn unit_square() -> SimplicialChain {
        let s = |r: &[&[f64]]| OrientedSimplex::from_coords(r).unwrap();
        SimplicialChain::from_terms(
            2,
            2,
            [
                (1.0, s(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]])),
                (1.0, s(&[&[0.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn exterior_derivative_examples() {
        assert_eq!(x_dy().exterior_derivative().unwrap(), dx_dy());
        assert!(dx(2, 0).exterior_derivative().unwrap().is_zero());
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let w = PolynomialForm::zero(1, 2)
            .with(&[0], x.mul(&x).mul(&y))
            .unwrap()
            .with(&[1], x.mul(&y).mul(&y))
            .unwrap();
        let expected = PolynomialForm::zero(2, 2).with(&[0, 1], y.mul(&y).sub(&x.mul(&x))).unwrap();
        assert_eq!(w.exterior_derivative().unwrap(), expected);
        assert!(dx_dy().exterior_derivative().is_err());
    }

    #[test]
    fn dd_vanishes_symbolically() {
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        let w = PolynomialForm::zero(1, 3)
            .with(&[0], x.mul(&y).mul(&z))
            .unwrap()
            .with(&[2], y.mul(&y).mul(&x))
            .unwrap();
        assert!(w.exterior_derivative().unwrap().exterior_derivative().unwrap().is_zero());
    }

    #[test]
    fn integration_examples() {
        let sq = unit_square();
        assert!((dx_dy().integrate(&sq).unwrap() - 1.0).abs() < 1e-15);
        let b = sq.boundary().unwrap();
        assert!((x_dy().integrate(&b).unwrap() - 1.0).abs() < 1e-15);
        assert!(stokes_check(&x_dy(), &sq).unwrap() < 1e-15);
        assert!(x_dy().integrate(&sq).is_err());
    }

    #[test]
    fn form_norm_examples() {
        let unit = BoundingBox::unit(3);
        assert_eq!(form_norm(&dx(3, 0), 0, 0.0, &unit, 8).unwrap().value, 1.0);
        let n = form_norm(&x_dy(), 1, 0.0, &BoundingBox::unit(2), 64).unwrap();
        assert_eq!(n.value, 1.0);
        for (k, a) in [(0, 0.0), (2, 0.5)] {
            assert_eq!(form_norm(&PolynomialForm::zero(1, 2), k, a, &BoundingBox::unit(2), 16).unwrap().value, 0.0);
        }
        assert!(form_norm(&x_dy(), 0, 1.0, &BoundingBox::unit(2), 16).is_err());
    }

    #[test]
    fn holder_term_of_linear_function() {
        // f = x on [0,1]: order-0 Hölder quotient |Δx| / |Δx|^½ peaks at Δx = 1
        let f = PolynomialForm::function(Polynomial::var(1, 0));
        let n = form_norm(&f, 0, 0.5, &BoundingBox::unit(1), 64).unwrap();
        assert!((n.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sup_bound_dominates_samples() {
        let x = Polynomial::var(2, 0);
        let w = PolynomialForm::zero(1, 2).with(&[0], x.mul(&x).scale(3.0)).unwrap().with(&[1], x.clone()).unwrap();
        let b = BoundingBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let sampled = form_norm(&w, 0, 0.0, &b, 64).unwrap().value;
        assert!(w.sup_bound(&b) >= sampled);
        assert!((sampled - 10f64.sqrt()).abs() < 1e-12);
    }
}
