//! Box-counting dimension of the support of a 1-chain over dyadic grids.

use std::collections::HashSet;

use crate::chain::SimplicialChain;
use crate::error::{Error, Result};

/// Number of closed-open dyadic boxes of side `2^{-j}` met by the segments
/// of `a`. Each segment is cut at every grid hyperplane it crosses and the
/// midpoint of every piece names its box.
pub fn box_count(a: &SimplicialChain, j: u32) -> Result<usize> {
    if a.dim() != 1 {
        return Err(Error::Dimension(format!("box counting needs a 1-chain, got dimension {}", a.dim())));
    }
    let scale = (1u64 << j) as f64;
    let m = a.ambient();
    let mut boxes: HashSet<Vec<i64>> = HashSet::new();
    let mut cuts: Vec<f64> = Vec::new();
    for t in a.terms() {
        let p = t.simplex.vertices()[0].coords();
        let q = t.simplex.vertices()[1].coords();
        cuts.clear();
        cuts.extend([0.0, 1.0]);
        for ax in 0..m {
            let (u, v) = (p[ax] * scale, q[ax] * scale);
            if u == v {
                continue;
            }
            let (lo, hi) = (u.min(v), u.max(v));
            let mut g = lo.floor() + 1.0;
            while g < hi {
                cuts.push((g - u) / (v - u));
                g += 1.0;
            }
        }
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            if w[1] - w[0] <= 0.0 {
                continue;
            }
            let s = 0.5 * (w[0] + w[1]);
            boxes.insert((0..m).map(|ax| ((p[ax] + s * (q[ax] - p[ax])) * scale).floor() as i64).collect());
        }
    }
    Ok(boxes.len())
}

/// Least-squares slope of `log N(2^{-j})` against `j log 2` over the given
/// dyadic levels, together with the counts.
pub fn box_dimension(a: &SimplicialChain, levels: std::ops::RangeInclusive<u32>) -> Result<(f64, Vec<usize>)> {
    let js: Vec<u32> = levels.collect();
    if js.len() < 2 {
        return Err(Error::InvalidArgument("box dimension needs at least two scales".into()));
    }
    let counts = js.iter().map(|&j| box_count(a, j)).collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = js.iter().map(|&j| j as f64 * std::f64::consts::LN_2).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c.max(1) as f64).ln()).collect();
    Ok((least_squares_slope(&xs, &ys), counts))
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::OrientedSimplex;

    #[test]
    fn straight_segment() {
        let seg = SimplicialChain::single(OrientedSimplex::from_coords(&[&[0.1, 0.1], &[0.9, 0.1]]).unwrap());
        // [0.1, 0.9] at side 1/8 meets boxes 0..=7
        assert_eq!(box_count(&seg, 3).unwrap(), 8);
        let (d, _) = box_dimension(&seg, 6..=12).unwrap();
        assert!((d - 1.0).abs() < 0.05);
    }
}
