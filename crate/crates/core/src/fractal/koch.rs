//! Koch-type curves: every segment is replaced by four segments of
//! relative length `s`, the middle two forming an outward bump.

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::norms::{SpanningWitness, WitnessPlane};

/// Largest supported level; `4^12` segments.
pub const MAX_KOCH_LEVEL: usize = 12;

pub const STANDARD_SCALE: f64 = 1.0 / 3.0;

pub(crate) fn check_scale(scale: f64) -> Result<()> {
    if !(scale > 0.25 && scale < 0.5) {
        return Err(Error::InvalidArgument(format!("Koch scale {scale} outside (1/4, 1/2)")));
    }
    Ok(())
}

/// Generator points `p, a, t, b, q` for one segment; the bump is on the
/// left of `p → q`.
fn generator(p: [f64; 2], q: [f64; 2], scale: f64) -> [[f64; 2]; 5] {
    let d = [q[0] - p[0], q[1] - p[1]];
    let a = [p[0] + scale * d[0], p[1] + scale * d[1]];
    let b = [q[0] - scale * d[0], q[1] - scale * d[1]];
    // bump legs have length scale·|d| and span the middle gap (1 − 2s)|d|
    let half = 0.5 - scale;
    let h = (scale * scale - half * half).sqrt();
    let t = [p[0] + 0.5 * d[0] - h * d[1], p[1] + 0.5 * d[1] + h * d[0]];
    [p, a, t, b, q]
}

/// Vertices of the level-`k` curve from `p` to `q`.
pub fn koch_points(p: [f64; 2], q: [f64; 2], k: usize, scale: f64) -> Result<Vec<[f64; 2]>> {
    check_scale(scale)?;
    if k > MAX_KOCH_LEVEL {
        return Err(Error::InvalidArgument(format!("Koch level {k} exceeds {MAX_KOCH_LEVEL}")));
    }
    let mut pts = vec![p, q];
    for _ in 0..k {
        let mut next = Vec::with_capacity(4 * pts.len());
        next.push(pts[0]);
        for w in pts.windows(2) {
            next.extend_from_slice(&generator(w[0], w[1], scale)[1..]);
        }
        pts = next;
    }
    Ok(pts)
}

/// Bump triangles `[a, t, b]` added at every level below `k`; their
/// boundaries turn the straight segment into the level-`k` curve.
pub fn koch_bumps(p: [f64; 2], q: [f64; 2], k: usize, scale: f64) -> Result<SimplicialChain> {
    let mut out = SimplicialChain::zero(2, 2);
    for level in 0..k {
        let pts = koch_points(p, q, level, scale)?;
        for w in pts.windows(2) {
            let [_, a, t, b, _] = generator(w[0], w[1], scale);
            out.push_unchecked(1.0, tri(a, t, b));
        }
    }
    Ok(out)
}

pub(crate) fn polyline_chain(pts: &[[f64; 2]]) -> SimplicialChain {
    let mut out = SimplicialChain::zero(1, 2);
    for w in pts.windows(2) {
        out.push_unchecked(1.0, seg(w[0], w[1]));
    }
    out
}

fn pt(p: [f64; 2]) -> Point {
    Point::from_vec_unchecked(p.to_vec())
}

fn seg(p: [f64; 2], q: [f64; 2]) -> OrientedSimplex {
    OrientedSimplex::new_unchecked(vec![pt(p), pt(q)])
}

fn tri(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> OrientedSimplex {
    OrientedSimplex::new_unchecked(vec![pt(a), pt(b), pt(c)])
}

/// Standard Koch curve on the unit interval: `4^k` segments of length
/// `3^{-k}`.
pub fn koch_chain(k: usize) -> Result<SimplicialChain> {
    Ok(polyline_chain(&koch_points([0.0, 0.0], [1.0, 0.0], k, STANDARD_SCALE)?))
}

/// Witness for `|koch_chain(k)|^♮_λ`, `1 < λ ≤ 2`: the same bump 2-chain
/// spans the curve to the unit segment on both axes.
pub fn koch_witness(k: usize, lambda: f64) -> Result<SpanningWitness> {
    let c = koch_bumps([0.0, 0.0], [1.0, 0.0], k, STANDARD_SCALE)?;
    Ok(SpanningWitness { lambda, planes: vec![WitnessPlane::leaf(c)] })
}

/// Snowflake region at level `k`: the base triangle plus the bumps of its
/// three sides, oriented so that its boundary traverses the closed Koch
/// curve `(0,0) → (1,0) → (1/2, −√3/2) → (0,0)` with bumps outward.
pub fn snowflake_region(k: usize) -> Result<SimplicialChain> {
    let v = snowflake_corners();
    let mut out = SimplicialChain::zero(2, 2);
    out.push_unchecked(1.0, tri(v[0], v[1], v[2]));
    for i in 0..3 {
        out.extend(koch_bumps(v[i], v[(i + 1) % 3], k, STANDARD_SCALE)?)?;
    }
    Ok(out)
}

/// The closed curve bounding [`snowflake_region`].
pub fn snowflake_curve(k: usize) -> Result<SimplicialChain> {
    let v = snowflake_corners();
    let mut out = SimplicialChain::zero(1, 2);
    for i in 0..3 {
        out.extend(polyline_chain(&koch_points(v[i], v[(i + 1) % 3], k, STANDARD_SCALE)?))?;
    }
    Ok(out)
}

fn snowflake_corners() -> [[f64; 2]; 3] {
    [[0.0, 0.0], [1.0, 0.0], [0.5, -(3f64.sqrt()) / 2.0]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::term_mass;
    use crate::refine::simplify;

    #[test]
    fn levels_and_masses() {
        assert_eq!(koch_chain(0).unwrap().len(), 1);
        let a1 = koch_chain(1).unwrap();
        assert_eq!(a1.len(), 4);
        assert!((term_mass(&a1) - 4.0 / 3.0).abs() < 1e-12);
        for k in 0..=8 {
            let m = term_mass(&koch_chain(k).unwrap());
            assert!((m / (4.0f64 / 3.0).powi(k as i32) - 1.0).abs() < 1e-9);
        }
        assert!(koch_chain(13).is_err());
    }

    #[test]
    fn bumps_span_to_the_base_segment() {
        for k in [1, 3, 5] {
            let a = koch_chain(k).unwrap();
            let c = koch_bumps([0.0, 0.0], [1.0, 0.0], k, STANDARD_SCALE).unwrap();
            let (r, exact) = simplify(&a.sub(&c.boundary().unwrap()).unwrap());
            assert!(exact);
            assert!((term_mass(&r) - 1.0).abs() < 1e-12, "level {k}");
            assert!(r.points().all(|p| p.coords()[1].abs() < 1e-15));
        }
    }

    #[test]
    fn snowflake_boundary_is_the_curve() {
        let r = snowflake_region(3).unwrap();
        let diff = r.boundary().unwrap().sub(&snowflake_curve(3).unwrap()).unwrap();
        assert!(simplify(&diff).0.is_empty());
        assert!(snowflake_curve(2).unwrap().boundary().unwrap().collapse().is_empty());
    }
}
