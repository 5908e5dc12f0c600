//! Finite complexes of candidate spanning cells, with integer incidence
//! matrices between consecutive dimensions.

use std::collections::HashMap;

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::refine::line_of;

/// Cells of dimensions `n, n+1, …` closed under taking faces down to `n`.
/// `levels[0]` holds the n-cells that chains are expressed on.
#[derive(Clone, Debug)]
pub struct SpanningComplex {
    base_dim: usize,
    ambient: usize,
    levels: Vec<Vec<OrientedSimplex>>,
    /// `incidence[l][c]` lists `(face index in level l, ±1)` for cell `c`
    /// of level `l + 1`.
    incidence: Vec<Vec<Vec<(usize, f64)>>>,
    keys: Vec<HashMap<Vec<u64>, usize>>,
}

impl SpanningComplex {
    /// Builds the complex from cells of any dimension ≥ `n`. Lower
    /// dimensional faces are added automatically.
    pub fn new(n: usize, m: usize, cells: impl IntoIterator<Item = OrientedSimplex>) -> Result<Self> {
        let mut by_dim: Vec<Vec<OrientedSimplex>> = Vec::new();
        for c in cells {
            if c.ambient() != m || c.dim() < n {
                return Err(Error::MalformedComplex(format!(
                    "{}-cell in R^{} for a complex over {n}-chains in R^{m}",
                    c.dim(),
                    c.ambient()
                )));
            }
            if c.is_degenerate() {
                return Err(Error::MalformedComplex("degenerate cell".into()));
            }
            let l = c.dim() - n;
            if by_dim.len() <= l {
                by_dim.resize(l + 1, Vec::new());
            }
            by_dim[l].push(c);
        }
        if by_dim.is_empty() {
            by_dim.push(Vec::new());
        }
        let depth = by_dim.len();
        let mut levels: Vec<Vec<OrientedSimplex>> = vec![Vec::new(); depth];
        let mut keys: Vec<HashMap<Vec<u64>, usize>> = vec![HashMap::new(); depth];
        // top-down so that faces of given cells are registered first
        for l in (0..depth).rev() {
            let mut pending: Vec<OrientedSimplex> = std::mem::take(&mut by_dim[l]);
            if l + 1 < depth {
                for c in &levels[l + 1] {
                    for i in 0..c.vertices().len() {
                        pending.push(c.face(i));
                    }
                }
            }
            for c in pending {
                if c.is_degenerate() {
                    return Err(Error::MalformedComplex("cell with a degenerate face".into()));
                }
                let key = c.key();
                if !keys[l].contains_key(&key) {
                    keys[l].insert(key, levels[l].len());
                    levels[l].push(c);
                }
            }
        }
        let mut incidence = Vec::with_capacity(depth.saturating_sub(1));
        for l in 0..depth.saturating_sub(1) {
            let rows = levels[l + 1]
                .iter()
                .map(|c| {
                    (0..c.vertices().len())
                        .map(|i| {
                            let face = c.face(i);
                            let idx = keys[l][&face.key()];
                            let rel = relative_sign(&face, &levels[l][idx]);
                            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                            (idx, sign * rel)
                        })
                        .collect()
                })
                .collect();
            incidence.push(rows);
        }
        let k = Self { base_dim: n, ambient: m, levels, incidence, keys };
        k.check_boundary_squared()?;
        Ok(k)
    }

    fn check_boundary_squared(&self) -> Result<()> {
        for l in 0..self.incidence.len().saturating_sub(1) {
            for (c, faces) in self.incidence[l + 1].iter().enumerate() {
                let mut acc: HashMap<usize, f64> = HashMap::new();
                for &(f, s) in faces {
                    for &(g, t) in &self.incidence[l][f] {
                        *acc.entry(g).or_default() += s * t;
                    }
                }
                if acc.values().any(|v| *v != 0.0) {
                    return Err(Error::MalformedComplex(format!(
                        "boundary of boundary of cell {c} in level {} is nonzero",
                        l + 2
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of levels (dimensions n, n+1, …) present.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn cells(&self, level: usize) -> &[OrientedSimplex] {
        self.levels.get(level).map_or(&[], |v| v.as_slice())
    }

    /// Faces of the cells of `level + 1` in `level`, with signs.
    pub fn incidence(&self, level: usize) -> &[Vec<(usize, f64)>] {
        self.incidence.get(level).map_or(&[], |v| v.as_slice())
    }

    /// Coefficient vector of `a` on the cells of `level`. Each term must be
    /// a cell, or for 1-chains a union of collinear cells.
    pub fn coefficients(&self, a: &SimplicialChain, level: usize) -> Result<Vec<f64>> {
        if a.dim() != self.base_dim + level || a.ambient() != self.ambient {
            return Err(Error::Dimension(format!(
                "{}-chain in R^{} against level {level} of a complex over {}-chains in R^{}",
                a.dim(),
                a.ambient(),
                self.base_dim,
                self.ambient
            )));
        }
        let cells = self.cells(level);
        let mut x = vec![0.0; cells.len()];
        let mut lines: Option<HashMap<Vec<i64>, Vec<(f64, f64, usize, f64)>>> = None;
        for (ti, t) in a.terms().iter().enumerate() {
            if let Some(&idx) = self.keys.get(level).and_then(|k| k.get(&t.simplex.key())) {
                x[idx] += t.coef * relative_sign(&t.simplex, &cells[idx]);
                continue;
            }
            if a.dim() != 1 {
                return Err(Error::NotRepresentable { term: ti, reason: "simplex is not a cell of the complex".into() });
            }
            let by_line = lines.get_or_insert_with(|| {
                let mut map: HashMap<Vec<i64>, Vec<(f64, f64, usize, f64)>> = HashMap::new();
                for (i, c) in cells.iter().enumerate() {
                    let (key, _, t0, t1) = line_of(c);
                    let (lo, hi, s) = if t0 <= t1 { (t0, t1, 1.0) } else { (t1, t0, -1.0) };
                    map.entry(key).or_default().push((lo, hi, i, s));
                }
                for v in map.values_mut() {
                    v.sort_by(|a, b| a.0.total_cmp(&b.0));
                }
                map
            });
            let (key, _, t0, t1) = line_of(&t.simplex);
            let (lo, hi, dir) = if t0 <= t1 { (t0, t1, 1.0) } else { (t1, t0, -1.0) };
            let tol = 1e-10 * (1.0 + lo.abs().max(hi.abs()));
            let segs = by_line.get(&key).ok_or_else(|| Error::NotRepresentable {
                term: ti,
                reason: "no cell on the supporting line".into(),
            })?;
            let mut cursor = lo;
            for &(a0, a1, idx, s) in segs.iter().filter(|s| s.0 >= lo - tol && s.1 <= hi + tol) {
                if (a0 - cursor).abs() > tol {
                    return Err(Error::NotRepresentable { term: ti, reason: "cells do not tile the segment".into() });
                }
                x[idx] += t.coef * dir * s;
                cursor = a1;
            }
            if (cursor - hi).abs() > tol {
                return Err(Error::NotRepresentable { term: ti, reason: "cells do not cover the segment".into() });
            }
        }
        Ok(x)
    }

    /// The chain `Σ c_i cell_i` on `level`.
    pub fn chain(&self, level: usize, coefs: &[f64]) -> SimplicialChain {
        let mut out = SimplicialChain::zero(self.base_dim + level, self.ambient);
        for (c, s) in coefs.iter().zip(self.cells(level)) {
            if c.abs() > 1e-12 {
                out.push_unchecked(*c, s.clone());
            }
        }
        out
    }

    /// Boundary of a coefficient vector on `level + 1`, as a vector on
    /// `level`.
    pub fn boundary_coefs(&self, level: usize, coefs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cells(level).len()];
        for (faces, &c) in self.incidence(level).iter().zip(coefs) {
            if c != 0.0 {
                for &(f, s) in faces {
                    out[f] += s * c;
                }
            }
        }
        out
    }
}

/// +1 when `a` and `b` have the same vertex set and orientation, −1 when
/// the orientations differ.
fn relative_sign(a: &OrientedSimplex, b: &OrientedSimplex) -> f64 {
    a.canonical().0 * b.canonical().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[&[f64]]) -> OrientedSimplex {
        OrientedSimplex::from_coords(rows).unwrap()
    }

    #[test]
    fn square_complex_incidence() {
        let k = SpanningComplex::new(
            1,
            2,
            [s(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]), s(&[&[0.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])],
        )
        .unwrap();
        assert_eq!(k.depth(), 2);
        assert_eq!(k.cells(1).len(), 2);
        assert_eq!(k.cells(0).len(), 5);
        // the diagonal cancels in the boundary of the sum
        let b = k.boundary_coefs(0, &[1.0, 1.0]);
        assert_eq!(b.iter().filter(|v| **v != 0.0).count(), 4);
    }

    #[test]
    fn collinear_cover_representation() {
        let k = SpanningComplex::new(1, 2, [s(&[&[0.0, 0.0], &[0.5, 0.0]]), s(&[&[1.0, 0.0], &[0.5, 0.0]])]).unwrap();
        let a = SimplicialChain::single(s(&[&[0.0, 0.0], &[1.0, 0.0]]));
        let x = k.coefficients(&a, 0).unwrap();
        assert_eq!(x, vec![1.0, -1.0]);
        let gap = SimplicialChain::single(s(&[&[0.0, 0.0], &[2.0, 0.0]]));
        assert!(matches!(k.coefficients(&gap, 0), Err(Error::NotRepresentable { .. })));
    }

    #[test]
    fn tetrahedron_complex_is_closed() {
        let k = SpanningComplex::new(
            1,
            3,
            [s(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]])],
        )
        .unwrap();
        assert_eq!(k.depth(), 3);
        assert_eq!((k.cells(0).len(), k.cells(1).len(), k.cells(2).len()), (6, 4, 1));
    }
}
