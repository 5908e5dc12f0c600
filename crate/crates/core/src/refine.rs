//! Common refinements and canonical representatives of chains.
//!
//! Two formal sums are the same chain when they induce the same
//! multiplicity function almost everywhere. Deciding that in general
//! position is out of reach, so exact reduction is provided for 1-chains
//! (segments grouped by their supporting line, any ambient dimension) and
//! for 2-chains lying in a single affine plane (overlay of all edge lines).

use std::collections::HashMap;

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::geometry::{dot, norm, Point};

const LINE_KEY_SCALE: f64 = 1e9;
const PARAM_TOL: f64 = 1e-11;

/// A simplicial complex on which chains can be rewritten cell by cell.
#[derive(Clone, Debug)]
pub enum Refinement {
    /// Supporting lines of 1-chains with their sorted breakpoints.
    Lines { m: usize, lines: Vec<LineCells> },
    /// Convex faces of an arrangement of lines inside one affine 2-plane.
    Planar(PlanarArrangement),
}

#[derive(Clone, Debug)]
pub struct LineCells {
    key: LineKey,
    /// Breakpoint parameters along the line direction, strictly increasing.
    breaks: Vec<f64>,
    /// Representative point for every breakpoint.
    points: Vec<Point>,
}

impl LineCells {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    fn locate(&self, t: f64) -> Option<usize> {
        let tol = PARAM_TOL * (1.0 + t.abs());
        let i = self.breaks.partition_point(|&b| b < t - tol);
        (i < self.breaks.len() && (self.breaks[i] - t).abs() <= tol).then_some(i)
    }
}

pub(crate) type LineKey = Vec<i64>;

/// Direction (sign-normalized unit vector), key, and the parameters of the
/// segment's endpoints along the direction.
pub(crate) fn line_of(s: &OrientedSimplex) -> (LineKey, Vec<f64>, f64, f64) {
    let p = &s.vertices()[0];
    let q = &s.vertices()[1];
    let d = q.sub(p);
    let len = norm(&d);
    let mut dir: Vec<f64> = d.iter().map(|x| x / len).collect();
    if let Some(first) = dir.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            dir.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let tp = dot(p.coords(), &dir);
    let tq = dot(q.coords(), &dir);
    let foot: Vec<f64> = p.coords().iter().zip(&dir).map(|(x, u)| x - tp * u).collect();
    let key = dir
        .iter()
        .chain(&foot)
        .map(|x| {
            let r = (x * LINE_KEY_SCALE).round() as i64;
            if r == 0 { 0 } else { r }
        })
        .collect();
    (key, dir, tp, tq)
}

fn build_lines(chains: &[&SimplicialChain]) -> (Vec<LineCells>, HashMap<LineKey, usize>) {
    let mut index: HashMap<LineKey, usize> = HashMap::new();
    let mut raw: Vec<(LineKey, Vec<(f64, Point)>)> = Vec::new();
    for chain in chains {
        for t in chain.terms() {
            let (key, _, tp, tq) = line_of(&t.simplex);
            let slot = *index.entry(key.clone()).or_insert_with(|| {
                raw.push((key, Vec::new()));
                raw.len() - 1
            });
            raw[slot].1.push((tp, t.simplex.vertices()[0].clone()));
            raw[slot].1.push((tq, t.simplex.vertices()[1].clone()));
        }
    }
    let lines = raw
        .into_iter()
        .map(|(key, mut pts)| {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut breaks: Vec<f64> = Vec::new();
            let mut points = Vec::new();
            for (t, p) in pts {
                match breaks.last() {
                    Some(&last) if (t - last).abs() <= PARAM_TOL * (1.0 + t.abs()) => {}
                    _ => {
                        breaks.push(t);
                        points.push(p);
                    }
                }
            }
            LineCells { key, breaks, points }
        })
        .collect();
    (lines, index)
}

/// Common refinement of two chains of equal dimension.
pub fn refine(a: &SimplicialChain, b: &SimplicialChain) -> Result<Refinement> {
    if a.dim() != b.dim() || a.ambient() != b.ambient() {
        return Err(Error::Dimension("refine needs chains of equal n and m".into()));
    }
    match a.dim() {
        1 => {
            let (lines, _) = build_lines(&[a, b]);
            Ok(Refinement::Lines { m: a.ambient(), lines })
        }
        2 => Ok(Refinement::Planar(PlanarArrangement::build(&[a, b])?)),
        n => Err(Error::Unsupported(format!("refinement of {n}-chains"))),
    }
}

/// Rewrites `a` on the cells of `r`, summing coefficients per cell.
pub fn reduce(a: &SimplicialChain, r: &Refinement) -> Result<SimplicialChain> {
    match r {
        Refinement::Lines { m, lines } => {
            if a.dim() != 1 || a.ambient() != *m {
                return Err(Error::Dimension("line refinement applies to 1-chains of the same ambient".into()));
            }
            reduce_on_lines(a, lines)
        }
        Refinement::Planar(arr) => arr.reduce(a),
    }
}

fn reduce_on_lines(a: &SimplicialChain, lines: &[LineCells]) -> Result<SimplicialChain> {
    let by_key: HashMap<&LineKey, usize> = lines.iter().enumerate().map(|(i, l)| (&l.key, i)).collect();
    let mut coefs: Vec<Vec<f64>> = lines.iter().map(|l| vec![0.0; l.breaks.len().saturating_sub(1)]).collect();
    let mut order: Vec<usize> = Vec::new();
    let mut seen = vec![false; lines.len()];
    for (ti, t) in a.terms().iter().enumerate() {
        let (key, _, tp, tq) = line_of(&t.simplex);
        let &li = by_key.get(&key).ok_or_else(|| Error::NotRepresentable {
            term: ti,
            reason: "supporting line not in the refinement".into(),
        })?;
        let line = &lines[li];
        let (i0, i1) = match (line.locate(tp), line.locate(tq)) {
            (Some(i0), Some(i1)) => (i0, i1),
            _ => {
                return Err(Error::NotRepresentable { term: ti, reason: "endpoint is not a breakpoint".into() })
            }
        };
        if !seen[li] {
            seen[li] = true;
            order.push(li);
        }
        let (lo, hi, sign) = if i0 <= i1 { (i0, i1, 1.0) } else { (i1, i0, -1.0) };
        for c in &mut coefs[li][lo..hi] {
            *c += sign * t.coef;
        }
    }
    let cut = 1e-14 * a.max_abs_coef();
    let mut out = SimplicialChain::zero(1, a.ambient());
    for li in order {
        let line = &lines[li];
        for (k, &c) in coefs[li].iter().enumerate() {
            if c.abs() > cut {
                let s = OrientedSimplex::new_unchecked(vec![line.points[k].clone(), line.points[k + 1].clone()]);
                out.push_unchecked(c, s);
            }
        }
    }
    Ok(out)
}

/// Best available canonical representative: exact reduction where
/// supported, merge of identical simplices otherwise. The flag reports
/// whether the exact path was taken.
pub fn simplify(a: &SimplicialChain) -> (SimplicialChain, bool) {
    match a.dim() {
        0 => (a.collapse(), true),
        1 => {
            let c = a.collapse();
            if c.is_empty() {
                return (c, true);
            }
            let (lines, _) = build_lines(&[&c]);
            match reduce_on_lines(&c, &lines) {
                Ok(r) => (r, true),
                Err(_) => (c, false),
            }
        }
        2 if a.len() <= PLANAR_TERM_LIMIT => match PlanarArrangement::build(&[a]).and_then(|arr| arr.reduce(a)) {
            Ok(r) => (r, true),
            Err(_) => (a.collapse(), false),
        },
        _ => (a.collapse(), false),
    }
}

/// Overlays beyond this many triangles are skipped by [`simplify`].
const PLANAR_TERM_LIMIT: usize = 400;

/// Orthonormal frame of an affine 2-plane in ℝᵐ.
#[derive(Clone, Debug)]
struct Frame {
    origin: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
}

impl Frame {
    fn to_2d(&self, p: &Point) -> [f64; 2] {
        let d: Vec<f64> = p.coords().iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        [dot(&d, &self.u), dot(&d, &self.v)]
    }

    fn residual(&self, p: &Point) -> f64 {
        let d: Vec<f64> = p.coords().iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        let (x, y) = (dot(&d, &self.u), dot(&d, &self.v));
        norm(&d.iter().zip(self.u.iter().zip(&self.v)).map(|(di, (ui, vi))| di - x * ui - y * vi).collect::<Vec<_>>())
    }

    fn to_nd(&self, q: [f64; 2]) -> Point {
        Point::from_vec_unchecked(
            self.origin.iter().zip(self.u.iter().zip(&self.v)).map(|(o, (u, v))| o + q[0] * u + q[1] * v).collect(),
        )
    }
}

type Poly = Vec<[f64; 2]>;

fn poly_area(p: &Poly) -> f64 {
    let mut a = 0.0;
    for i in 0..p.len() {
        let (x0, y0) = (p[i][0], p[i][1]);
        let (x1, y1) = (p[(i + 1) % p.len()][0], p[(i + 1) % p.len()][1]);
        a += x0 * y1 - x1 * y0;
    }
    a / 2.0
}

fn centroid(p: &Poly) -> [f64; 2] {
    let k = p.len() as f64;
    let s = p.iter().fold([0.0, 0.0], |acc, q| [acc[0] + q[0], acc[1] + q[1]]);
    [s[0] / k, s[1] / k]
}

/// Line `a x + b y = c` with unit normal.
#[derive(Clone, Copy, Debug)]
struct Line2 {
    a: f64,
    b: f64,
    c: f64,
}

impl Line2 {
    fn through(p: [f64; 2], q: [f64; 2]) -> Self {
        let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
        let len = (dx * dx + dy * dy).sqrt();
        let (mut a, mut b) = (-dy / len, dx / len);
        if a < -1e-12 || (a.abs() <= 1e-12 && b < 0.0) {
            a = -a;
            b = -b;
        }
        Self { a, b, c: a * p[0] + b * p[1] }
    }

    fn same(&self, o: &Line2, tol: f64) -> bool {
        (self.a - o.a).abs() < 1e-9 && (self.b - o.b).abs() < 1e-9 && (self.c - o.c).abs() < tol
    }

    fn eval(&self, p: [f64; 2]) -> f64 {
        self.a * p[0] + self.b * p[1] - self.c
    }
}

/// Splits a convex polygon by a line; returns the nonempty sides.
fn split(poly: &Poly, line: &Line2, tol: f64) -> Option<(Poly, Poly)> {
    let vals: Vec<f64> = poly.iter().map(|&p| line.eval(p)).collect();
    let pos = vals.iter().any(|&v| v > tol);
    let neg = vals.iter().any(|&v| v < -tol);
    if !(pos && neg) {
        return None;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (p, q) = (poly[i], poly[j]);
        let (vp, vq) = (vals[i], vals[j]);
        if vp >= -tol {
            left.push(p);
        }
        if vp <= tol {
            right.push(p);
        }
        if (vp > tol && vq < -tol) || (vp < -tol && vq > tol) {
            let s = vp / (vp - vq);
            let x = [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])];
            left.push(x);
            right.push(x);
        }
    }
    Some((left, right))
}

fn contains(poly: &Poly, x: [f64; 2], tol: f64) -> bool {
    let orient = poly_area(poly).signum();
    (0..poly.len()).all(|i| {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        orient * ((q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0])) >= -tol
    })
}

/// Faces of the arrangement of all triangle edge lines of a set of
/// coplanar 2-chains.
#[derive(Clone, Debug)]
pub struct PlanarArrangement {
    m: usize,
    frame: Frame,
    lines: Vec<Line2>,
    faces: Vec<Poly>,
    scale: f64,
}

impl PlanarArrangement {
    fn build(chains: &[&SimplicialChain]) -> Result<Self> {
        let m = chains[0].ambient();
        let frame = common_plane(chains)?;
        let mut all: Vec<&OrientedSimplex> = chains.iter().flat_map(|c| c.terms().iter().map(|t| &t.simplex)).collect();
        let scale = all
            .iter()
            .flat_map(|s| s.vertices())
            .map(|p| norm(&p.sub(&Point::from_vec_unchecked(frame.origin.clone()))))
            .fold(1.0, f64::max);
        let tol = 1e-9 * scale;
        let mut lines: Vec<Line2> = Vec::new();
        for s in &all {
            let q: Vec<[f64; 2]> = s.vertices().iter().map(|p| frame.to_2d(p)).collect();
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                let l = Line2::through(q[i], q[j]);
                if !lines.iter().any(|o| o.same(&l, tol)) {
                    lines.push(l);
                }
            }
        }
        let mut arr = Self { m, frame, lines, faces: Vec::new(), scale };
        all.dedup_by(|a, b| a == b);
        for s in all {
            for piece in arr.pieces(s) {
                let c = centroid(&piece);
                if !arr.faces.iter().any(|f| contains(f, c, tol * scale)) {
                    arr.faces.push(piece);
                }
            }
        }
        Ok(arr)
    }

    /// Convex pieces of a triangle cut by every arrangement line, CCW.
    fn pieces(&self, s: &OrientedSimplex) -> Vec<Poly> {
        let tol = 1e-9 * self.scale;
        let mut tri: Poly = s.vertices().iter().map(|p| self.frame.to_2d(p)).collect();
        if poly_area(&tri) < 0.0 {
            tri.reverse();
        }
        let mut pieces = vec![tri];
        for line in &self.lines {
            let mut next = Vec::with_capacity(pieces.len());
            for p in pieces {
                match split(&p, line, tol) {
                    Some((l, r)) => {
                        next.push(l);
                        next.push(r);
                    }
                    None => next.push(p),
                }
            }
            pieces = next;
        }
        pieces.retain(|p| p.len() >= 3 && poly_area(p) > 1e-14 * self.scale * self.scale);
        pieces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Faces as positively oriented triangles (fan from the first vertex).
    pub fn cell_triangles(&self) -> Vec<OrientedSimplex> {
        self.faces.iter().flat_map(|f| self.fan(f)).collect()
    }

    fn fan(&self, f: &Poly) -> Vec<OrientedSimplex> {
        (1..f.len() - 1)
            .map(|i| {
                OrientedSimplex::new_unchecked(vec![
                    self.frame.to_nd(f[0]),
                    self.frame.to_nd(f[i]),
                    self.frame.to_nd(f[i + 1]),
                ])
            })
            .collect()
    }

    fn reduce(&self, a: &SimplicialChain) -> Result<SimplicialChain> {
        if a.dim() != 2 || a.ambient() != self.m {
            return Err(Error::Dimension("planar refinement applies to 2-chains of the same ambient".into()));
        }
        let tol = 1e-9 * self.scale;
        let mut coefs = vec![0.0; self.faces.len()];
        let mut partial: Vec<Vec<(f64, f64, usize)>> = vec![Vec::new(); self.faces.len()];
        for (ti, t) in a.terms().iter().enumerate() {
            if t.simplex.vertices().iter().any(|p| self.frame.residual(p) > tol) {
                return Err(Error::NotRepresentable { term: ti, reason: "simplex leaves the arrangement plane".into() });
            }
            let q: Vec<[f64; 2]> = t.simplex.vertices().iter().map(|p| self.frame.to_2d(p)).collect();
            let sign = poly_area(&q).signum();
            let mut covered: HashMap<usize, f64> = HashMap::new();
            for piece in self.pieces(&t.simplex) {
                let c = centroid(&piece);
                let fi = self.faces.iter().position(|f| contains(f, c, tol * self.scale)).ok_or_else(|| {
                    Error::NotRepresentable { term: ti, reason: "piece outside every face".into() }
                })?;
                *covered.entry(fi).or_default() += poly_area(&piece);
            }
            for (fi, area) in covered {
                let full = poly_area(&self.faces[fi]);
                if (area - full).abs() <= 1e-7 * full {
                    coefs[fi] += sign * t.coef;
                } else {
                    partial[fi].push((sign * t.coef, area, ti));
                }
            }
        }
        // Partial pieces (e.g. fan triangles of a face) must tile their face
        // a whole number of times per coefficient value.
        for (fi, parts) in partial.iter_mut().enumerate() {
            if parts.is_empty() {
                continue;
            }
            let full = poly_area(&self.faces[fi]);
            parts.sort_by(|a, b| a.0.total_cmp(&b.0));
            for group in parts.chunk_by(|a, b| a.0 == b.0) {
                let area: f64 = group.iter().map(|g| g.1).sum();
                let times = (area / full).round();
                if times < 1.0 || (area - times * full).abs() > 1e-7 * full {
                    return Err(Error::NotRepresentable {
                        term: group[0].2,
                        reason: "simplex covers a face only partially".into(),
                    });
                }
                coefs[fi] += group[0].0 * times;
            }
        }
        let cut = 1e-14 * a.max_abs_coef();
        let mut out = SimplicialChain::zero(2, self.m);
        for (f, &c) in self.faces.iter().zip(&coefs) {
            if c.abs() > cut {
                for s in self.fan(f) {
                    out.push_unchecked(c, s);
                }
            }
        }
        Ok(out)
    }
}

fn common_plane(chains: &[&SimplicialChain]) -> Result<Frame> {
    let m = chains[0].ambient();
    let first = chains
        .iter()
        .flat_map(|c| c.terms())
        .next()
        .ok_or_else(|| Error::Unsupported("planar refinement of empty chains".into()))?;
    let v = first.simplex.vertices();
    let origin = v[0].coords().to_vec();
    let e1 = v[1].sub(&v[0]);
    let e2 = v[2].sub(&v[0]);
    let u: Vec<f64> = e1.iter().map(|x| x / norm(&e1)).collect();
    let proj = dot(&e2, &u);
    let w: Vec<f64> = e2.iter().zip(&u).map(|(a, b)| a - proj * b).collect();
    let w_norm = norm(&w);
    let mut frame = Frame { origin, u, v: w.iter().map(|x| x / w_norm).collect() };
    if m == 2 {
        frame = Frame { origin: vec![0.0, 0.0], u: vec![1.0, 0.0], v: vec![0.0, 1.0] };
    }
    let scale = chains.iter().flat_map(|c| c.points()).map(|p| norm(p.coords())).fold(1.0, f64::max);
    for c in chains {
        for (ti, t) in c.terms().iter().enumerate() {
            if t.simplex.vertices().iter().any(|p| frame.residual(p) > 1e-9 * scale) {
                return Err(Error::Unsupported(format!("2-chain term {ti} is not coplanar with the rest")));
            }
        }
    }
    Ok(frame)
}
