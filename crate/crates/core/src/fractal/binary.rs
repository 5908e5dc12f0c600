//! Dyadic-lattice approximators of curves: crossings of the grid of side
//! `2^{-k}` are snapped to lattice vertices and joined in order.

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::geometry::Point;

use super::CurveSpec;

pub const MAX_BINARY_LEVEL: usize = 14;

/// Nearest integer, ties toward zero.
fn round_half_toward_origin(u: f64) -> f64 {
    let f = u.abs();
    let r = if f - f.floor() > 0.5 { f.floor() + 1.0 } else { f.floor() };
    r.copysign(u)
}

fn snap(p: &[f64], scale: f64, h: f64) -> Vec<f64> {
    p.iter().map(|&x| round_half_toward_origin(x * scale) * h).collect()
}

/// Binary approximator at dyadic level `k`. Endpoints snap the same way
/// as interior crossings, so the boundary of the result is the snapped
/// boundary of the curve; closed curves give cycles.
pub fn binary_approximator(spec: &CurveSpec, k: usize) -> Result<SimplicialChain> {
    if k > MAX_BINARY_LEVEL {
        return Err(Error::InvalidArgument(format!("dyadic level {k} exceeds {MAX_BINARY_LEVEL}")));
    }
    let scale = (1u64 << k) as f64;
    let h = 1.0 / scale;
    let trace = spec.trace(h / 4.0)?;
    let m = spec.ambient;
    let mut verts: Vec<Vec<f64>> = vec![snap(trace[0].coords(), scale, h)];
    let mut hits: Vec<(f64, usize, f64)> = Vec::new();
    for w in trace.windows(2) {
        let (p, q) = (w[0].coords(), w[1].coords());
        hits.clear();
        for ax in 0..m {
            let (u, v) = (p[ax] * scale, q[ax] * scale);
            if u == v {
                continue;
            }
            // grid values g with u < g ≤ v (or v ≤ g < u)
            let (mut g, step) = if v > u { (u.floor() + 1.0, 1.0) } else { (u.ceil() - 1.0, -1.0) };
            while (v - g) * step >= 0.0 {
                hits.push(((g - u) / (v - u), ax, g));
                g += step;
            }
        }
        hits.sort_by(|a, b| a.0.total_cmp(&b.0));
        for &(t, ax, g) in &hits {
            let x: Vec<f64> = (0..m).map(|i| p[i] + t * (q[i] - p[i])).collect();
            let mut s = snap(&x, scale, h);
            s[ax] = g * h;
            if verts.last() != Some(&s) {
                verts.push(s);
            }
        }
    }
    let end = snap(trace.last().unwrap().coords(), scale, h);
    if verts.last() != Some(&end) {
        verts.push(end);
    }
    let mut out = SimplicialChain::zero(1, m);
    for w in verts.windows(2) {
        let s = OrientedSimplex::new_unchecked(vec![
            Point::from_vec_unchecked(w[0].clone()),
            Point::from_vec_unchecked(w[1].clone()),
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
    fn ties_round_toward_origin() {
        assert_eq!(round_half_toward_origin(2.5), 2.0);
        assert_eq!(round_half_toward_origin(-2.5), -2.0);
        assert_eq!(round_half_toward_origin(2.51), 3.0);
        assert_eq!(round_half_toward_origin(-0.2), 0.0);
    }

    #[test]
    fn straight_segment() {
        let p = |x: f64, y: f64| Point::new(vec![x, y]).unwrap();
        let spec = CurveSpec::polyline(vec![p(0.0, 0.3), p(1.0, 0.3)], false).unwrap();
        for k in 0..=10 {
            let a = binary_approximator(&spec, k).unwrap();
            let bound = 2f64.powi(1 - k as i32) * 2f64.sqrt();
            assert!((term_mass(&a) - 1.0).abs() <= bound, "level {k}");
        }
        assert!(binary_approximator(&spec, 15).is_err());
    }

    #[test]
    fn closed_curves_give_cycles() {
        let p = |x: f64, y: f64| Point::new(vec![x, y]).unwrap();
        let spec = CurveSpec::polyline(vec![p(0.13, 0.17), p(0.81, 0.29), p(0.44, 0.93)], true).unwrap();
        for k in 1..=8 {
            let a = binary_approximator(&spec, k).unwrap();
            assert!(a.boundary().unwrap().collapse().is_empty());
        }
    }
}
