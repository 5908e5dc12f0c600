//! Step functions on the line as 2-chains in the plane: the region under
//! the graph, with area and boundary integrals that recover `∫ f`.

use serde::{Deserialize, Serialize};

use crate::chain::{OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::forms::common;
use crate::geometry::Point;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub a: f64,
    pub b: f64,
    pub v: f64,
}

/// Finite sum of `v·1_[a,b)` over pairwise disjoint intervals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStep")]
pub struct StepFunction {
    pieces: Vec<Piece>,
}

#[derive(Deserialize)]
struct RawStep {
    pieces: Vec<Piece>,
}

impl TryFrom<RawStep> for StepFunction {
    type Error = Error;
    fn try_from(raw: RawStep) -> Result<Self> {
        Self::new(raw.pieces)
    }
}

impl StepFunction {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        for (i, p) in pieces.iter().enumerate() {
            if !(p.a.is_finite() && p.b.is_finite() && p.v.is_finite()) {
                return Err(Error::InvalidArgument(format!("piece {i} is not finite")));
            }
            if !(p.a < p.b) {
                return Err(Error::InvalidArgument(format!("piece {i} has empty interval [{}, {})", p.a, p.b)));
            }
            if p.v == 0.0 {
                return Err(Error::InvalidArgument(format!("piece {i} has value zero")));
            }
        }
        pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
        if let Some(w) = pieces.windows(2).find(|w| w[1].a < w[0].b) {
            return Err(Error::InvalidArgument(format!(
                "intervals [{}, {}) and [{}, {}) overlap",
                w[0].a, w[0].b, w[1].a, w[1].b
            )));
        }
        Ok(Self { pieces })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `Σ v (b − a)`.
    pub fn integral(&self) -> f64 {
        self.pieces.iter().map(|p| p.v * (p.b - p.a)).sum()
    }

    pub fn negated(&self) -> Self {
        Self { pieces: self.pieces.iter().map(|p| Piece { v: -p.v, ..*p }).collect() }
    }
}

fn pt(x: f64, y: f64) -> Point {
    Point::from_vec_unchecked(vec![x, y])
}

/// Region between the graph and the x-axis: each rectangle as two
/// counterclockwise triangles with coefficient `+1`, or `−1` for negative
/// values.
pub fn chain_from_step_function(f: &StepFunction) -> SimplicialChain {
    let mut out = SimplicialChain::zero(2, 2);
    for p in &f.pieces {
        let (lo, hi, sign) = if p.v > 0.0 { (0.0, p.v, 1.0) } else { (p.v, 0.0, -1.0) };
        let (q0, q1, q2, q3) = (pt(p.a, lo), pt(p.b, lo), pt(p.b, hi), pt(p.a, hi));
        out.push_unchecked(sign, OrientedSimplex::new_unchecked(vec![q0.clone(), q1, q2.clone()]));
        out.push_unchecked(sign, OrientedSimplex::new_unchecked(vec![q0, q2, q3]));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LebesgueTriple {
    pub closed_form: f64,
    pub area: f64,
    pub boundary: f64,
}

impl LebesgueTriple {
    pub fn max_discrepancy(&self) -> f64 {
        let v = [self.closed_form, self.area, self.boundary];
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }
}

/// `(Σ v·len, ∫_{A_f} dx∧dy, ∫_Γ y dx)` where `Γ = −∂A_f`: the graph run
/// from left to right, on which the vertical sides and the axis carry no
/// `y dx`.
pub fn lebesgue_consistency(f: &StepFunction) -> Result<LebesgueTriple> {
    let a = chain_from_step_function(f);
    let area = common::dx_dy().integrate(&a)?;
    let boundary = if a.is_empty() { 0.0 } else { -common::y_dx().integrate(&a.boundary()?)? };
    Ok(LebesgueTriple { closed_form: f.integral(), area, boundary })
}
