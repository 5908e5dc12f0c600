//! Seeded random chains, forms and step functions for property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::forms::PolynomialForm;
use crate::geometry::Point;
use crate::lebesgue::{Piece, StepFunction};
use crate::poly::Polynomial;

pub type CaseRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point(r: &mut CaseRng, m: usize) -> Point {
    Point::from_vec_unchecked((0..m).map(|_| r.gen_range(-1.0..1.0)).collect())
}

/// Non-degenerate n-simplex with vertices in `[-1, 1]^m`.
pub fn simplex(r: &mut CaseRng, n: usize, m: usize) -> OrientedSimplex {
    loop {
        let v: Vec<Point> = (0..=n).map(|_| point(r, m)).collect();
        if let Ok(s) = OrientedSimplex::new(v) {
            if s.mass() > 1e-3 {
                return s;
            }
        }
    }
}

/// Chain of `1..=max_terms` random simplices with coefficients in `[-2, 2]`.
pub fn chain(r: &mut CaseRng, n: usize, m: usize, max_terms: usize) -> SimplicialChain {
    let terms = r.gen_range(1..=max_terms);
    let mut out = SimplicialChain::zero(n, m);
    for _ in 0..terms {
        let c: f64 = r.gen_range(-2.0..2.0);
        out.push_unchecked(if c == 0.0 { 1.0 } else { c }, simplex(r, n, m));
    }
    out
}

/// Polynomial in `m` variables of total degree at most `degree`.
pub fn polynomial(r: &mut CaseRng, m: usize, degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(m);
    for _ in 0..terms {
        let mut powers = vec![0u32; m];
        let d = r.gen_range(0..=degree);
        for _ in 0..d {
            powers[r.gen_range(0..m)] += 1;
        }
        p.add_term(powers, r.gen_range(-1.0..1.0));
    }
    p
}

/// k-form on ℝᵐ with a random polynomial on every basis wedge.
pub fn form(r: &mut CaseRng, k: usize, m: usize, degree: u32) -> PolynomialForm {
    let mut w = PolynomialForm::zero(k, m);
    for idx in crate::chain::coordinate_planes(m, k) {
        let p = polynomial(r, m, degree, 3);
        w.add_wedge(&idx, p).expect("increasing indices of the right length");
    }
    w
}

/// Step function with up to `max_pieces` disjoint pieces in `[-4, 4]`.
pub fn step_function(r: &mut CaseRng, max_pieces: usize) -> StepFunction {
    let n = r.gen_range(1..=max_pieces);
    let mut cuts: Vec<f64> = (0..2 * n).map(|_| r.gen_range(-4.0..4.0)).collect();
    cuts.sort_by(f64::total_cmp);
    let pieces = cuts
        .chunks(2)
        .filter(|c| c[0] < c[1])
        .map(|c| {
            let v: f64 = r.gen_range(-3.0..3.0);
            Piece { a: c[0], b: c[1], v: if v == 0.0 { 1.0 } else { v } }
        })
        .collect();
    StepFunction::new(pieces).expect("sorted disjoint pieces")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = chain(&mut rng(7), 2, 3, 4);
        let b = chain(&mut rng(7), 2, 3, 4);
        assert_eq!(a, b);
        assert!(a.terms().iter().all(|t| !t.simplex.is_degenerate()));
        let f = step_function(&mut rng(1), 6);
        assert!(!f.pieces().is_empty());
    }
}
