//! Self-similar 1-chain in the unit cube with 11 replicas at scale 1/3
//! per level, together with an explicit witness for its 3-natural norm.
//!
//! The generator `α` is a thin closed loop: an out path `p_t` and a back
//! path `p_t + w·g` joined at both ends. Level `k` is
//! `A_k = α + Σ_r h_r(A_{k−1})` with `h_r(x) = cell_r + x/3`.
//!
//! For 2-plane `j` with normal axis `a`, `C_j` is the cylinder swept by `α`
//! along `e_a` down to a base plane, capped by a ladder strip between the
//! projected out and back paths. The cylinder projects to zero area in plane
//! `j`, leaving only the thin strip. `D_ij` is the cone over `C_i − C_j`
//! from an interior apex, so `∂D_ij = C_i − C_j` term by term.

use crate::chain::{coordinate_planes, OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::norms::{SpanningWitness, WitnessPlane};

pub const REPLICAS: usize = 11;
pub const REPLICA_SCALE: f64 = 1.0 / 3.0;

/// Lower corners of the replica cells, in units of 1/3.
const CELLS: [[f64; 3]; REPLICAS] = [
    [0.0, 0.0, 0.0],
    [2.0, 0.0, 0.0],
    [0.0, 2.0, 0.0],
    [2.0, 2.0, 0.0],
    [0.0, 0.0, 2.0],
    [2.0, 0.0, 2.0],
    [0.0, 2.0, 2.0],
    [2.0, 2.0, 2.0],
    [1.0, 1.0, 0.0],
    [1.0, 0.0, 1.0],
    [0.0, 1.0, 1.0],
];

const DIAMETER: f64 = 0.7;
const WIDTH: f64 = 0.02;
const SAMPLES: usize = 12;
const OFFSET: [f64; 3] = [0.31, -0.52, 0.79];
const APEX_SHIFT: [f64; 3] = [0.013, -0.021, 0.017];
const BASE_MARGIN: f64 = 0.02;

type V3 = [f64; 3];

/// Out and back paths of the generator loop.
fn generator_paths() -> (Vec<V3>, Vec<V3>) {
    let norm = OFFSET.iter().map(|x| x * x).sum::<f64>().sqrt();
    let g = OFFSET.map(|x| x / norm);
    let r = DIAMETER / 2.0;
    let out: Vec<V3> = (0..=SAMPLES)
        .map(|s| {
            let t = s as f64 / SAMPLES as f64;
            let th = 2.6 * std::f64::consts::PI * t + 0.3;
            [
                0.5 + r * 0.9 * th.cos(),
                0.5 + r * 0.8 * th.sin(),
                0.5 + r * (0.7 * (t - 0.5) + 0.05 * (5.0 * t).sin()),
            ]
        })
        .collect();
    let back = out.iter().map(|p| [p[0] + WIDTH * g[0], p[1] + WIDTH * g[1], p[2] + WIDTH * g[2]]).collect();
    (out, back)
}

fn loop_edges(out: &[V3], back: &[V3]) -> Vec<(V3, V3)> {
    let n = out.len();
    let mut e: Vec<(V3, V3)> = out.windows(2).map(|w| (w[0], w[1])).collect();
    e.push((out[n - 1], back[n - 1]));
    e.extend((0..n - 1).rev().map(|t| (back[t + 1], back[t])));
    e.push((back[0], out[0]));
    e
}

fn pt(p: V3) -> Point {
    Point::from_vec_unchecked(p.to_vec())
}

fn simplex(v: &[V3]) -> OrientedSimplex {
    OrientedSimplex::new_unchecked(v.iter().map(|&p| pt(p)).collect())
}

fn generator_loop() -> SimplicialChain {
    let (out, back) = generator_paths();
    let mut a = SimplicialChain::zero(1, 3);
    for (u, v) in loop_edges(&out, &back) {
        a.push_unchecked(1.0, simplex(&[u, v]));
    }
    a
}

/// Spanning 2-chain of the generator swept along `axis`.
fn generator_span(axis: usize) -> SimplicialChain {
    let (out, back) = generator_paths();
    let base = out.iter().chain(&back).map(|p| p[axis]).fold(f64::INFINITY, f64::min) - BASE_MARGIN * DIAMETER;
    let drop = |p: V3| {
        let mut q = p;
        q[axis] = base;
        q
    };
    let mut c = SimplicialChain::zero(2, 3);
    for (u, v) in loop_edges(&out, &back) {
        c.push_unchecked(1.0, simplex(&[u, v, drop(v)]));
        c.push_unchecked(1.0, simplex(&[u, drop(v), drop(u)]));
    }
    for t in 0..out.len() - 1 {
        let (p0, p1, q0, q1) = (drop(out[t]), drop(out[t + 1]), drop(back[t]), drop(back[t + 1]));
        c.push_unchecked(1.0, simplex(&[p0, p1, q1]));
        c.push_unchecked(1.0, simplex(&[p0, q1, q0]));
    }
    c
}

fn apex() -> V3 {
    [0.5 + APEX_SHIFT[0], 0.5 + APEX_SHIFT[1], 0.5 + APEX_SHIFT[2]]
}

/// `Σ c·[e, v_0, …, v_n]` over the terms of `x`.
fn cone(e: V3, x: &SimplicialChain) -> SimplicialChain {
    let mut out = SimplicialChain::zero(x.dim() + 1, x.ambient());
    for t in x.terms() {
        let mut v = vec![pt(e)];
        v.extend(t.simplex.vertices().iter().cloned());
        out.push_unchecked(t.coef, OrientedSimplex::new_unchecked(v));
    }
    out
}

/// Applies the self-similar construction `k` times to a generator chain.
fn replicate(gen: &SimplicialChain, k: usize) -> SimplicialChain {
    let mut level = gen.clone();
    for _ in 0..k {
        let mut next = gen.clone();
        for cell in CELLS {
            let image = level.map_points(|p| p.map(|i, x| (cell[i] + x) * REPLICA_SCALE));
            next.extend(image).expect("images keep dimensions");
        }
        level = next;
    }
    level
}

/// Sweep axis for 2-plane `j`: the coordinate missing from the plane.
fn normal_axis(j: usize) -> usize {
    let plane = &coordinate_planes(3, 2)[j];
    (0..3).find(|a| !plane.contains(a)).unwrap()
}

/// Level-`k` chain with its witness for λ = 3.
///
/// The witness has `C_i` on axis `i` (residual zero), and under `C_i` the
/// cones `D_ij` whose residual on 2-plane `j` is `C_j`.
pub fn harrison_curve_chain(k: usize) -> Result<(SimplicialChain, SpanningWitness)> {
    if !(1..=3).contains(&k) {
        return Err(Error::Unsupported(format!("curve level {k}; supported levels are 1, 2, 3")));
    }
    let a = replicate(&generator_loop(), k);
    let e = apex();
    let spans: Vec<SimplicialChain> = (0..3).map(|j| generator_span(normal_axis(j))).collect();
    let c: Vec<SimplicialChain> = spans.iter().map(|s| replicate(s, k)).collect();
    let mut planes = Vec::with_capacity(3);
    for i in 0..3 {
        let children = (0..3)
            .map(|j| {
                let d = if i == j {
                    SimplicialChain::zero(3, 3)
                } else {
                    // the apex moves with each replica
                    replicate(&cone(e, &spans[i].sub(&spans[j]).expect("same dimensions")), k)
                };
                WitnessPlane::leaf(d)
            })
            .collect();
        planes.push(WitnessPlane { chain: c[i].clone(), children });
    }
    Ok((a, SpanningWitness { lambda: 3.0, planes }))
}

/// Similarity dimension `log 11 / log 3`.
pub fn similarity_dimension() -> f64 {
    (REPLICAS as f64).ln() / (1.0 / REPLICA_SCALE).ln()
}
