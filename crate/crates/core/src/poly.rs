//! Sparse multivariate polynomials with real coefficients.

use std::collections::BTreeMap;

use crate::geometry::factorial;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(1.0, e)
    }

    pub fn monomial(coef: f64, powers: Vec<u32>) -> Self {
        let mut p = Self::zero(powers.len());
        p.add_term(powers, coef);
        p
    }

    pub fn add_term(&mut self, powers: Vec<u32>, coef: f64) {
        debug_assert_eq!(powers.len(), self.nvars);
        if coef == 0.0 {
            return;
        }
        let e = self.terms.entry(powers).or_insert(0.0);
        *e += coef;
        if *e == 0.0 {
            self.terms.retain(|_, c| *c != 0.0);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, f64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in self.terms() {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                out.add_term(e2, c * e[v] as f64);
            }
        }
        out
    }

    /// Mixed partial derivative `∂^β`.
    pub fn partial(&self, beta: &[u32]) -> Self {
        let mut p = self.clone();
        for (v, &k) in beta.iter().enumerate() {
            for _ in 0..k {
                p = p.derivative(v);
            }
        }
        p
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Substitutes `x_v = offset[v] + Σ_a linear[v][a] t_a`, giving a
    /// polynomial in the `t` variables.
    pub fn compose_affine(&self, offset: &[f64], linear: &[Vec<f64>], k: usize) -> Polynomial {
        let max_deg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        // powers[v][d] = (x_v(t))^d
        let powers: Vec<Vec<Polynomial>> = (0..self.nvars)
            .map(|v| {
                let mut lin = Polynomial::constant(k, offset[v]);
                for a in 0..k {
                    lin = lin.add(&Polynomial::var(k, a).scale(linear[v][a]));
                }
                let mut pw = vec![Polynomial::constant(k, 1.0)];
                for d in 1..=max_deg {
                    let next = pw[d - 1].mul(&lin);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = Polynomial::zero(k);
        for (e, c) in self.terms() {
            let mut prod = Polynomial::constant(k, c);
            for (v, &d) in e.iter().enumerate() {
                if d > 0 {
                    prod = prod.mul(&powers[v][d as usize]);
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Exact integral over the standard simplex `{t ≥ 0, Σ t ≤ 1}` via
    /// `∫ t^α = α! / (|α| + k)!`.
    pub fn integrate_standard_simplex(&self) -> f64 {
        let k = self.nvars;
        self.terms()
            .map(|(e, c)| {
                let num: f64 = e.iter().map(|&a| factorial(a as usize)).product();
                let total: usize = e.iter().map(|&a| a as usize).sum();
                c * num / factorial(total + k)
            })
            .sum()
    }

    /// Upper bound of `|p|` on the box `[lo, hi]` by bounding every
    /// monomial separately.
    pub fn abs_bound(&self, lo: &[f64], hi: &[f64]) -> f64 {
        self.terms()
            .map(|(e, c)| {
                c.abs()
                    * e.iter()
                        .enumerate()
                        .map(|(v, &k)| lo[v].abs().max(hi[v].abs()).powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivatives() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.mul(&x).mul(&y).add(&y.scale(3.0)); // x²y + 3y
        assert_eq!(p.eval(&[2.0, 1.5]), 4.0 * 1.5 + 4.5);
        assert_eq!(p.derivative(0), x.mul(&y).scale(2.0));
        assert_eq!(p.derivative(1), x.mul(&x).add(&Polynomial::constant(2, 3.0)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn simplex_moments() {
        // ∫_Δ2 1 = 1/2, ∫ t0 = 1/6, ∫ t0 t1 = 1/24
        assert!((Polynomial::constant(2, 1.0).integrate_standard_simplex() - 0.5).abs() < 1e-15);
        assert!((Polynomial::var(2, 0).integrate_standard_simplex() - 1.0 / 6.0).abs() < 1e-15);
        let p = Polynomial::var(2, 0).mul(&Polynomial::var(2, 1));
        assert!((p.integrate_standard_simplex() - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn affine_composition_matches_pointwise() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.mul(&y).mul(&y).add(&x.scale(-2.0));
        let offset = [0.5, -1.0];
        let lin = vec![vec![1.0, 2.0], vec![0.0, -3.0]];
        let q = p.compose_affine(&offset, &lin, 2);
        for t in [[0.1, 0.2], [0.7, 0.05], [0.0, 1.0]] {
            let xv = [offset[0] + t[0] + 2.0 * t[1], offset[1] - 3.0 * t[1]];
            assert!((q.eval(&t) - p.eval(&xv)).abs() < 1e-12);
        }
    }
}
