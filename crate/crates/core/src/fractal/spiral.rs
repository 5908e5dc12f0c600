//! Spiral through `x_n = (−1)^{n+1}/√n` on the x-axis, consecutive
//! crossings joined by half-circles. Its enclosed areas sum like the
//! harmonic series, so no approximating sequence is Cauchy in the flat norm.

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Segments per half-circle (half of a 16-gon).
pub const ARC_SEGMENTS: usize = 8;

pub fn crossing(n: usize) -> f64 {
    let r = 1.0 / (n as f64).sqrt();
    if n % 2 == 1 {
        r
    } else {
        -r
    }
}

/// Vertices of the spiral polyline through crossings `1..=k`.
pub fn spiral_points(k: usize) -> Result<Vec<[f64; 2]>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("spiral needs at least 2 crossings, got {k}")));
    }
    let mut pts = vec![[crossing(1), 0.0]];
    for n in 1..k {
        let (a, b) = (crossing(n), crossing(n + 1));
        let c = 0.5 * (a + b);
        let r = 0.5 * (a - b).abs();
        // counterclockwise about the origin: over the top from the right,
        // under the bottom from the left
        let start = if a > b { 0.0 } else { std::f64::consts::PI };
        for s in 1..ARC_SEGMENTS {
            let th = start + std::f64::consts::PI * s as f64 / ARC_SEGMENTS as f64;
            pts.push([c + r * th.cos(), r * th.sin()]);
        }
        pts.push([b, 0.0]);
    }
    Ok(pts)
}

/// Polyline chain through the first `k` crossings; its boundary is the
/// two endpoints.
pub fn spiral_chain(k: usize) -> Result<SimplicialChain> {
    let pts = spiral_points(k)?;
    let mut out = SimplicialChain::zero(1, 2);
    for w in pts.windows(2) {
        let s = OrientedSimplex::new_unchecked(vec![
            Point::from_vec_unchecked(w[0].to_vec()),
            Point::from_vec_unchecked(w[1].to_vec()),
        ]);
        out.push_unchecked(1.0, s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::term_mass;

    #[test]
    fn crossings_and_boundary() {
        let a = spiral_chain(5).unwrap();
        assert_eq!(a.len(), 4 * ARC_SEGMENTS);
        let b = a.boundary().unwrap().collapse();
        assert_eq!(b.len(), 2);
        for t in b.terms() {
            let x = t.simplex.vertices()[0].coords()[0];
            let expected = if t.coef > 0.0 { crossing(5) } else { crossing(1) };
            assert_eq!(x, expected);
        }
        assert!(spiral_chain(1).is_err());
    }

    #[test]
    fn mass_grows_without_bound() {
        let m: Vec<f64> = [16, 64, 256, 1024].iter().map(|&k| term_mass(&spiral_chain(k).unwrap())).collect();
        assert!(m.windows(2).all(|w| w[1] > w[0] + 1.0));
    }
}
