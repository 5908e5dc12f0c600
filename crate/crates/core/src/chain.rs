//! Oriented simplices and finite simplicial chains.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::geometry::{det, factorial, gram, BoundingBox, Point};

/// Scale-relative degeneracy threshold on `volume / (max edge)^n`.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// An ordered vertex tuple `p_0 ... p_n` in ℝᵐ. The order carries the
/// orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedSimplex {
    vertices: Vec<Point>,
}

impl OrientedSimplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::VertexCount { expected: 1, got: 0 });
        };
        let m = first.dim();
        if let Some(bad) = vertices.iter().find(|p| p.dim() != m) {
            return Err(Error::Dimension(format!(
                "vertex of dimension {} in a simplex of ambient dimension {m}",
                bad.dim()
            )));
        }
        if vertices.len() - 1 > m {
            return Err(Error::Dimension(format!(
                "{}-simplex cannot live in R^{m}",
                vertices.len() - 1
            )));
        }
        Ok(Self { vertices })
    }

    pub fn from_coords(rows: &[&[f64]]) -> Result<Self> {
        let vertices = rows.iter().map(|r| Point::new(r.to_vec())).collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub(crate) fn new_unchecked(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Topological dimension n.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Ambient dimension m.
    pub fn ambient(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn edge_vectors(&self) -> Vec<Vec<f64>> {
        let p0 = &self.vertices[0];
        self.vertices[1..].iter().map(|p| p.sub(p0)).collect()
    }

    /// n-dimensional volume `sqrt(det G) / n!`, without the degeneracy cut.
    pub fn raw_mass(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 1.0;
        }
        let g = gram(&self.edge_vectors());
        det(&g).max(0.0).sqrt() / factorial(n)
    }

    pub fn max_edge(&self) -> f64 {
        self.vertices
            .iter()
            .tuple_combinations()
            .map(|(a, b)| a.dist(b))
            .fold(0.0, f64::max)
    }

    pub fn is_degenerate(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return false;
        }
        let scale = self.max_edge().powi(n as i32);
        scale == 0.0 || self.raw_mass() < DEGENERACY_TOL * scale
    }

    /// `M_n(σ)`; zero for degenerate simplices.
    pub fn mass(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            self.raw_mass()
        }
    }

    /// The face opposite vertex `i`.
    pub fn face(&self, i: usize) -> OrientedSimplex {
        let mut v = self.vertices.clone();
        v.remove(i);
        Self { vertices: v }
    }

    pub fn reversed(&self) -> OrientedSimplex {
        let mut v = self.vertices.clone();
        if v.len() >= 2 {
            v.swap(0, 1);
        }
        Self { vertices: v }
    }

    /// Orthogonal projection onto the coordinate subspace on `axes`.
    pub fn select(&self, axes: &[usize]) -> OrientedSimplex {
        Self { vertices: self.vertices.iter().map(|p| p.select(axes)).collect() }
    }

    pub fn map_points(&self, f: &impl Fn(&Point) -> Point) -> OrientedSimplex {
        Self { vertices: self.vertices.iter().map(f).collect() }
    }

    /// Vertices sorted lexicographically together with the sign of the
    /// sorting permutation.
    pub fn canonical(&self) -> (f64, OrientedSimplex) {
        let (sign, idx) = self.sort_order();
        let vertices = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        (sign, Self { vertices })
    }

    fn sort_order(&self) -> (f64, Vec<usize>) {
        let mut idx = Vec::with_capacity(self.vertices.len());
        let sign = self.sort_into(&mut idx, usize::MAX);
        (sign, idx)
    }

    /// Writes the canonical vertex order into `idx`, leaving out vertex
    /// `skip` (if in range), and returns the sign of that permutation.
    fn sort_into(&self, idx: &mut Vec<usize>, skip: usize) -> f64 {
        idx.clear();
        idx.extend((0..self.vertices.len()).filter(|&i| i != skip));
        let mut sign = 1.0;
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && cmp_points(&self.vertices[idx[j - 1]], &self.vertices[idx[j]]).is_gt() {
                idx.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        sign
    }

    /// Exact key of the vertex set (orientation ignored), with the sign of
    /// the sorting permutation.
    pub(crate) fn signed_key(&self) -> (f64, Vec<u64>) {
        let (sign, idx) = self.sort_order();
        (sign, idx.iter().flat_map(|&i| self.vertices[i].bits()).collect())
    }

    pub(crate) fn key(&self) -> Vec<u64> {
        self.signed_key().1
    }
}

fn cmp_points(a: &Point, b: &Point) -> std::cmp::Ordering {
    for (x, y) in a.coords().iter().zip(b.coords()) {
        let o = x.total_cmp(y);
        if o != std::cmp::Ordering::Equal && *x != *y {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// The n-dimensional coordinate planes of ℝᵐ, as sorted axis subsets in
/// lexicographic order. Plane `i` of a chain always refers to entry `i`
/// of this list (0-based).
pub fn coordinate_planes(m: usize, n: usize) -> Vec<Vec<usize>> {
    (0..m).combinations(n).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub simplex: OrientedSimplex,
}

/// A finite formal sum of oriented n-simplices in ℝᵐ. Degenerate simplices
/// and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialChain {
    n: usize,
    m: usize,
    terms: Vec<Term>,
}

impl SimplicialChain {
    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, m, terms: Vec::new() }
    }

    pub fn from_terms(n: usize, m: usize, terms: impl IntoIterator<Item = (f64, OrientedSimplex)>) -> Result<Self> {
        let mut chain = Self::zero(n, m);
        for (coef, simplex) in terms {
            chain.push(coef, simplex)?;
        }
        Ok(chain)
    }

    pub fn single(simplex: OrientedSimplex) -> Self {
        let mut chain = Self::zero(simplex.dim(), simplex.ambient());
        chain.push_unchecked(1.0, simplex);
        chain
    }

    pub fn push(&mut self, coef: f64, simplex: OrientedSimplex) -> Result<()> {
        if simplex.dim() != self.n || simplex.ambient() != self.m {
            return Err(Error::Dimension(format!(
                "{}-simplex in R^{} pushed onto a {}-chain in R^{}",
                simplex.dim(),
                simplex.ambient(),
                self.n,
                self.m
            )));
        }
        if !coef.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient {coef}")));
        }
        self.push_unchecked(coef, simplex);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, coef: f64, simplex: OrientedSimplex) {
        if coef != 0.0 && !simplex.is_degenerate() {
            self.terms.push(Term { coef, simplex });
        }
    }

    /// Skips the degeneracy test; for faces and copies of stored terms.
    fn push_raw(&mut self, coef: f64, simplex: OrientedSimplex) {
        if coef != 0.0 {
            self.terms.push(Term { coef, simplex });
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, t: f64) -> Self {
        if t == 0.0 {
            return Self::zero(self.n, self.m);
        }
        Self {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|t0| Term { coef: t0.coef * t, simplex: t0.simplex.clone() }).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::Dimension(format!(
                "cannot combine a {}-chain in R^{} with a {}-chain in R^{}",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    /// Concatenation of the two term lists.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negated())
    }

    pub fn extend(&mut self, other: Self) -> Result<()> {
        self.check_same(&other)?;
        self.terms.extend(other.terms);
        Ok(())
    }

    /// Alternating sum of vertex-deleted faces.
    pub fn boundary(&self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::NoBoundary);
        }
        let mut out = Self::zero(self.n - 1, self.m);
        for t in &self.terms {
            for i in 0..=self.n {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                out.push_raw(sign * t.coef, t.simplex.face(i));
            }
        }
        Ok(out)
    }

    /// Merges terms with identical vertex sets (exact coordinates), with
    /// orientation signs, and drops zero sums. Terms keep first-seen order.
    pub fn collapse(&self) -> Self {
        collapse_parts(self.n, self.m, &[Part::Terms(self, 1.0)])
    }

    /// `(self − ∂c).collapse()` without materializing the boundary.
    pub fn collapse_minus_boundary(&self, c: &Self) -> Result<Self> {
        if c.n != self.n + 1 || c.m != self.m {
            return Err(Error::Dimension(format!(
                "boundary of a {}-chain in R^{} against a {}-chain in R^{}",
                c.n, c.m, self.n, self.m
            )));
        }
        Ok(collapse_parts(self.n, self.m, &[Part::Terms(self, 1.0), Part::Faces(c, -1.0)]))
    }

    /// Projection onto coordinate plane `i` of [`coordinate_planes`]`(m, n)`.
    /// The result is an n-chain in ℝⁿ.
    pub fn project(&self, i: usize) -> Result<Self> {
        let planes = coordinate_planes(self.m, self.n);
        let axes = planes.get(i).ok_or(Error::PlaneIndex { index: i, count: planes.len() })?;
        Ok(self.project_onto(axes))
    }

    /// Orthogonal projection onto an arbitrary coordinate subspace.
    pub fn project_onto(&self, axes: &[usize]) -> Self {
        let mut out = Self::zero(self.n.min(axes.len()), axes.len());
        if self.n > axes.len() {
            return out;
        }
        for t in &self.terms {
            out.push_unchecked(t.coef, t.simplex.select(axes));
        }
        out
    }

    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Self {
        let mut out = Self::zero(self.n, self.m);
        for t in &self.terms {
            out.push_unchecked(t.coef, t.simplex.map_points(&f));
        }
        out
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.terms.iter().flat_map(|t| t.simplex.vertices())
    }

    pub fn bounding_box(&self) -> BoundingBox {
        BoundingBox::around(self.points(), self.m)
    }

    pub fn max_abs_coef(&self) -> f64 {
        self.terms.iter().map(|t| t.coef.abs()).fold(0.0, f64::max)
    }
}

enum Part<'a> {
    Terms(&'a SimplicialChain, f64),
    /// Faces of the terms, with the alternating boundary signs.
    Faces(&'a SimplicialChain, f64),
}

/// Merges the simplices of all parts by exact vertex set. Groups are summed
/// in input order and emitted in order of first appearance.
fn collapse_parts(n: usize, m: usize, parts: &[Part]) -> SimplicialChain {
    // (coefficient, simplex, skipped vertex or usize::MAX)
    let mut items: Vec<(f64, &OrientedSimplex, usize)> = Vec::new();
    for part in parts {
        match *part {
            Part::Terms(c, s) => items.extend(c.terms.iter().map(|t| (s * t.coef, &t.simplex, usize::MAX))),
            Part::Faces(c, s) => {
                for t in &c.terms {
                    for i in 0..t.simplex.vertices.len() {
                        let sign = if i % 2 == 0 { s } else { -s };
                        items.push((sign * t.coef, &t.simplex, i));
                    }
                }
            }
        }
    }
    let len = items.len();
    let stride = (n + 1) * m;
    let mut keys: Vec<u64> = Vec::with_capacity(len * stride);
    let mut coefs: Vec<f64> = Vec::with_capacity(len);
    let mut idx: Vec<usize> = Vec::with_capacity(n + 2);
    for &(coef, simplex, skip) in &items {
        let sign = simplex.sort_into(&mut idx, skip);
        coefs.push(sign * coef);
        keys.extend(idx.iter().flat_map(|&i| simplex.vertices[i].bits()));
    }
    let key = |i: usize| &keys[i * stride..(i + 1) * stride];
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_unstable_by(|&a, &b| key(a).cmp(key(b)).then(a.cmp(&b)));
    let mut groups: Vec<(usize, f64)> = Vec::new();
    let mut g = 0;
    while g < len {
        let first = order[g];
        let mut coef = 0.0;
        let mut h = g;
        while h < len && key(order[h]) == key(first) {
            coef += coefs[order[h]];
            h += 1;
        }
        groups.push((first, coef));
        g = h;
    }
    groups.sort_unstable_by_key(|&(first, _)| first);
    let mut out = SimplicialChain::zero(n, m);
    for (i, coef) in groups {
        let (_, simplex, skip) = items[i];
        let mut idx = Vec::new();
        simplex.sort_into(&mut idx, skip);
        let canon = OrientedSimplex { vertices: idx.iter().map(|&j| simplex.vertices[j].clone()).collect() };
        out.push_raw(coef, canon);
    }
    out
}
