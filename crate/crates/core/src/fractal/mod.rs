//! Approximating sequences of simplicial chains for nonsmooth curves, and
//! limits of integrals along them.

pub mod binary;
pub mod boxdim;
pub mod harrison;
pub mod koch;
pub mod spiral;

use serde::{Deserialize, Serialize};

use crate::chain::SimplicialChain;
use crate::error::{Error, Result};
use crate::forms::PolynomialForm;
use crate::geometry::Point;
use crate::norms::SpanningWitness;

pub use binary::binary_approximator;
pub use boxdim::{box_count, box_dimension};
pub use harrison::harrison_curve_chain;
pub use koch::{koch_chain, koch_witness, snowflake_curve, snowflake_region};
pub use spiral::spiral_chain;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    /// Four-segment generator with segment length `scale`.
    Koch { segments: usize, scale: f64 },
    HarrisonFigure1 { replicas: usize, scale: f64 },
    Spiral { crossings: usize },
    Polyline { points: Vec<Point>, closed: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub ambient: usize,
    pub orientation: Orientation,
}

impl CurveSpec {
    /// Koch-type curve on the unit interval.
    pub fn koch(scale: f64) -> Result<Self> {
        koch::check_scale(scale)?;
        Ok(Self { kind: CurveKind::Koch { segments: 4, scale }, ambient: 2, orientation: Orientation::Positive })
    }

    pub fn standard_koch() -> Self {
        Self::koch(koch::STANDARD_SCALE).expect("standard scale is valid")
    }

    pub fn harrison_figure1() -> Self {
        Self {
            kind: CurveKind::HarrisonFigure1 { replicas: harrison::REPLICAS, scale: harrison::REPLICA_SCALE },
            ambient: 3,
            orientation: Orientation::Positive,
        }
    }

    pub fn spiral(crossings: usize) -> Result<Self> {
        if crossings < 2 {
            return Err(Error::InvalidArgument("spiral needs at least 2 crossings".into()));
        }
        Ok(Self { kind: CurveKind::Spiral { crossings }, ambient: 2, orientation: Orientation::Positive })
    }

    pub fn polyline(points: Vec<Point>, closed: bool) -> Result<Self> {
        let m = points.first().map(Point::dim).ok_or_else(|| Error::InvalidArgument("empty polyline".into()))?;
        if points.len() < 2 || points.iter().any(|p| p.dim() != m) {
            return Err(Error::InvalidArgument("polyline needs at least two points of one dimension".into()));
        }
        Ok(Self { kind: CurveKind::Polyline { points, closed }, ambient: m, orientation: Orientation::Positive })
    }

    pub fn reversed(mut self) -> Self {
        self.orientation = match self.orientation {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        };
        self
    }

    /// `log(count) / log(1/scale)` for the self-similar kinds.
    pub fn similarity_dimension(&self) -> Option<f64> {
        match &self.kind {
            CurveKind::Koch { segments, scale } => Some((*segments as f64).ln() / (1.0 / scale).ln()),
            CurveKind::HarrisonFigure1 { replicas, scale } => Some((*replicas as f64).ln() / (1.0 / scale).ln()),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        match &self.kind {
            CurveKind::Polyline { closed, .. } => *closed,
            CurveKind::HarrisonFigure1 { .. } => true,
            _ => false,
        }
    }

    /// Polyline following the curve with segments no longer than about
    /// `spacing` (or its own vertices, for explicit polylines).
    pub fn trace(&self, spacing: f64) -> Result<Vec<Point>> {
        if !(spacing > 0.0) {
            return Err(Error::InvalidArgument("trace spacing must be positive".into()));
        }
        let mut pts: Vec<Point> = match &self.kind {
            CurveKind::Koch { segments, scale } => {
                if *segments != 4 {
                    return Err(Error::Unsupported(format!("Koch generator with {segments} segments")));
                }
                let mut level = 0;
                while scale.powi(level as i32) > spacing && level < koch::MAX_KOCH_LEVEL {
                    level += 1;
                }
                koch::koch_points([0.0, 0.0], [1.0, 0.0], level, *scale)?
                    .into_iter()
                    .map(|p| Point::from_vec_unchecked(p.to_vec()))
                    .collect()
            }
            CurveKind::Spiral { crossings } => spiral::spiral_points(*crossings)?
                .into_iter()
                .map(|p| Point::from_vec_unchecked(p.to_vec()))
                .collect(),
            CurveKind::Polyline { points, closed } => {
                let mut p = points.clone();
                if *closed && p.first() != p.last() {
                    p.push(p[0].clone());
                }
                p
            }
            CurveKind::HarrisonFigure1 { .. } => {
                return Err(Error::Unsupported("the replica construction is a sum of loops without a parameterization".into()))
            }
        };
        if self.orientation == Orientation::Negative {
            pts.reverse();
        }
        Ok(pts)
    }
}

#[derive(Clone, Debug)]
pub struct ApproximatorLevel {
    pub k: usize,
    pub chain: SimplicialChain,
    pub witness: Option<SpanningWitness>,
}

#[derive(Clone, Debug)]
pub struct ApproximatorSequence {
    pub spec: CurveSpec,
    pub levels: Vec<ApproximatorLevel>,
}

impl ApproximatorSequence {
    /// Standard Koch levels, each with its bump witness at `lambda` when
    /// given.
    pub fn koch(ks: impl IntoIterator<Item = usize>, lambda: Option<f64>) -> Result<Self> {
        let levels = ks
            .into_iter()
            .map(|k| {
                Ok(ApproximatorLevel {
                    k,
                    chain: koch_chain(k)?,
                    witness: lambda.map(|l| koch_witness(k, l)).transpose()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { spec: CurveSpec::standard_koch(), levels })
    }

    /// Spiral truncations at the given crossing counts.
    pub fn spiral(ks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let ks: Vec<usize> = ks.into_iter().collect();
        let levels = ks
            .iter()
            .map(|&k| Ok(ApproximatorLevel { k, chain: spiral_chain(k)?, witness: None }))
            .collect::<Result<_>>()?;
        Ok(Self { spec: CurveSpec::spiral(ks.last().copied().unwrap_or(2))?, levels })
    }

    pub fn harrison(ks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let levels = ks
            .into_iter()
            .map(|k| {
                let (chain, w) = harrison_curve_chain(k)?;
                Ok(ApproximatorLevel { k, chain, witness: Some(w) })
            })
            .collect::<Result<_>>()?;
        Ok(Self { spec: CurveSpec::harrison_figure1(), levels })
    }

    /// Binary approximators at the given dyadic levels.
    pub fn binary(spec: &CurveSpec, ks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let levels = ks
            .into_iter()
            .map(|k| Ok(ApproximatorLevel { k, chain: binary_approximator(spec, k)?, witness: None }))
            .collect::<Result<_>>()?;
        Ok(Self { spec: spec.clone(), levels })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Cauchy and the last step is within tolerance.
    Converged,
    /// Geometrically contracting but not yet within tolerance.
    Cauchy,
    Diverged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitDiagnostics {
    pub levels: Vec<usize>,
    pub integrals: Vec<f64>,
    pub deltas: Vec<f64>,
    /// `exp` of the least-squares slope of `log δ` over the last
    /// [`FIT_WINDOW`] deltas.
    pub ratio: f64,
    pub verdict: Verdict,
    pub tol: f64,
}

pub const FIT_WINDOW: usize = 4;

/// Fitted ratios above this count as non-contracting.
pub const CAUCHY_RATIO: f64 = 0.9;

/// `I_k = ∫_{A_k} ω` along the sequence, returning the last value and the
/// convergence diagnostics. A non-Cauchy sequence is reported through the
/// verdict, not as an error.
pub fn limit_integral(w: &PolynomialForm, seq: &ApproximatorSequence, tol: f64) -> Result<(f64, LimitDiagnostics)> {
    if w.degree() != 1 {
        return Err(Error::Unsupported(format!("limit integrals of {}-forms", w.degree())));
    }
    if seq.levels.len() < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 levels, got {}", seq.levels.len())));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let integrals = seq.levels.iter().map(|l| w.integrate(&l.chain)).collect::<Result<Vec<f64>>>()?;
    let value = *integrals.last().unwrap();
    let levels = seq.levels.iter().map(|l| l.k).collect();
    Ok((value, diagnose(levels, integrals, tol)))
}

/// Deltas, fitted ratio and verdict for any sequence of at least two values.
pub fn diagnose(levels: Vec<usize>, integrals: Vec<f64>, tol: f64) -> LimitDiagnostics {
    let deltas: Vec<f64> = integrals.windows(2).map(|p| (p[1] - p[0]).abs()).collect();
    let (ratio, verdict) = if deltas.is_empty() { (f64::NAN, Verdict::Diverged) } else { classify(&integrals, &deltas, tol) };
    LimitDiagnostics { levels, integrals, deltas, ratio, verdict, tol }
}

fn classify(integrals: &[f64], deltas: &[f64], tol: f64) -> (f64, Verdict) {
    let scale = 1.0 + integrals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-15 * scale;
    let window = &deltas[deltas.len().saturating_sub(FIT_WINDOW)..];
    let ratio = if window.iter().all(|&d| d <= floor) {
        0.0
    } else {
        let xs: Vec<f64> = (0..window.len()).map(|i| i as f64).collect();
        let ys: Vec<f64> = window.iter().map(|&d| d.max(floor).ln()).collect();
        boxdim::least_squares_slope(&xs, &ys).exp()
    };
    let decreasing = window.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-9) + floor);
    let last = *deltas.last().unwrap();
    let verdict = if ratio >= CAUCHY_RATIO || !decreasing {
        Verdict::Diverged
    } else if last <= tol {
        Verdict::Converged
    } else {
        Verdict::Cauchy
    };
    (ratio, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::common;

    #[test]
    fn exact_form_is_constant_along_koch() {
        let seq = ApproximatorSequence::koch(0..=5, None).unwrap();
        let (v, d) = limit_integral(&common::dx(2, 0), &seq, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(d.verdict, Verdict::Converged);
        assert_eq!(d.ratio, 0.0);
    }

    #[test]
    fn koch_area_converges_geometrically() {
        let seq = ApproximatorSequence::koch(0..=8, None).unwrap();
        let (_, d) = limit_integral(&common::x_dy(), &seq, 1e-3).unwrap();
        assert!((d.ratio - 4.0 / 9.0).abs() < 1e-6);
        assert_eq!(d.verdict, Verdict::Converged);
    }

    #[test]
    fn spiral_diverges() {
        let seq = ApproximatorSequence::spiral((1..=6).map(|j| 1usize << (j + 1))).unwrap();
        let (_, d) = limit_integral(&common::x_dy(), &seq, 1e-4).unwrap();
        assert_eq!(d.verdict, Verdict::Diverged);
    }

    #[test]
    fn argument_checks() {
        let seq = ApproximatorSequence::koch(0..=1, None).unwrap();
        assert!(limit_integral(&common::x_dy(), &seq, 1e-3).is_err());
        let seq = ApproximatorSequence::koch(0..=3, None).unwrap();
        assert!(limit_integral(&common::dx_dy(), &seq, 1e-3).is_err());
    }

    #[test]
    fn specs() {
        let k = CurveSpec::standard_koch();
        assert!((k.similarity_dimension().unwrap() - 4f64.ln() / 3f64.ln()).abs() < 1e-15);
        let h = CurveSpec::harrison_figure1();
        assert!((h.similarity_dimension().unwrap() - 2.1826586).abs() < 1e-6);
        assert!(h.trace(0.1).is_err());
        let t = k.clone().reversed().trace(0.05).unwrap();
        assert_eq!(t.first().unwrap().coords(), &[1.0, 0.0]);
    }
}
