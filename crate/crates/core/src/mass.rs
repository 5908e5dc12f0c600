//! n-mass, projected λ-mass and the base case of the λ-natural norm.

use serde::{Deserialize, Serialize};

use crate::chain::{coordinate_planes, OrientedSimplex, SimplicialChain};
use crate::error::{Error, Result};
use crate::refine::simplify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MassKind {
    /// The infimum over equivalent representatives is attained.
    Exact,
    /// Value of one specific representative.
    UpperBound,
}

impl MassKind {
    pub fn and(self, other: MassKind) -> MassKind {
        if self == MassKind::Exact && other == MassKind::Exact {
            MassKind::Exact
        } else {
            MassKind::UpperBound
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassValue {
    pub value: f64,
    pub kind: MassKind,
    pub lambda: f64,
    pub plane: Option<usize>,
}

/// `M_n(A)`, evaluated on the canonical representative when one is
/// available.
pub fn mass(a: &SimplicialChain) -> MassValue {
    let (rep, exact) = simplify(a);
    MassValue {
        value: term_mass(&rep),
        kind: if exact { MassKind::Exact } else { MassKind::UpperBound },
        lambda: a.dim() as f64,
        plane: None,
    }
}

/// `Σ |a_i| M_n(σ_i)` over the stored terms, no reduction.
pub fn term_mass(a: &SimplicialChain) -> f64 {
    a.terms().iter().fold(0.0, |acc, t| acc + t.coef.abs() * t.simplex.mass())
}

/// `|a| M_n(π σ)^(λ/n)` summed over terms, projected onto the coordinate
/// subspace `axes`. Zero-mass images contribute nothing, also at λ = 0.
pub fn term_projected_mass(a: &SimplicialChain, axes: &[usize], lambda: f64) -> f64 {
    let n = a.dim();
    a.terms().iter().fold(0.0, |acc, t| {
        let m = projected_simplex_mass(&t.simplex, axes);
        if m == 0.0 {
            acc
        } else {
            acc + t.coef.abs() * power(m, lambda, n)
        }
    })
}

pub(crate) fn projected_simplex_mass(s: &OrientedSimplex, axes: &[usize]) -> f64 {
    if axes.len() < s.dim() {
        return 0.0;
    }
    s.select(axes).mass()
}

fn power(m: f64, lambda: f64, n: usize) -> f64 {
    if n == 0 || lambda == n as f64 {
        m
    } else {
        m.powf(lambda / n as f64)
    }
}

fn check_lambda(a: &SimplicialChain, lambda: f64) -> Result<()> {
    let n = a.dim() as f64;
    if !(0.0..=n).contains(&lambda) {
        return Err(Error::LambdaRange { lambda, lo: 0.0, hi: n });
    }
    Ok(())
}

/// `M_{λ,π_i}(A)` for coordinate plane `i` (0-based, lexicographic).
///
/// At λ = n the canonical representative attains the infimum whenever it
/// exists. For λ < n the power is concave, so finer representatives cost
/// more; the smaller of the given representative and the canonical one with
/// merged collinear runs is returned as an upper bound.
pub fn projected_mass(a: &SimplicialChain, plane: usize, lambda: f64) -> Result<MassValue> {
    check_lambda(a, lambda)?;
    let planes = coordinate_planes(a.ambient(), a.dim());
    let axes = planes.get(plane).ok_or(Error::PlaneIndex { index: plane, count: planes.len() })?;
    let (rep, exact) = simplify(a);
    let (value, kind) = if lambda == a.dim() as f64 {
        (term_projected_mass(&rep, axes, lambda), if exact { MassKind::Exact } else { MassKind::UpperBound })
    } else {
        let merged = if a.dim() == 1 && exact { merge_runs(&rep) } else { rep };
        let v = term_projected_mass(&merged, axes, lambda).min(term_projected_mass(&a.collapse(), axes, lambda));
        (v, MassKind::UpperBound)
    };
    Ok(MassValue { value, kind, lambda, plane: Some(plane) })
}

/// `|A|^♮_λ = Σ_i M_{λ,π_i}(A)` for 0 ≤ λ ≤ n.
pub fn natural_norm_base(a: &SimplicialChain, lambda: f64) -> Result<MassValue> {
    check_lambda(a, lambda)?;
    let count = coordinate_planes(a.ambient(), a.dim()).len();
    let mut value = 0.0;
    let mut kind = MassKind::Exact;
    for i in 0..count {
        let pm = projected_mass(a, i, lambda)?;
        value += pm.value;
        kind = kind.and(pm.kind);
    }
    Ok(MassValue { value, kind, lambda, plane: None })
}

/// Joins consecutive collinear segments carrying the same coefficient.
fn merge_runs(a: &SimplicialChain) -> SimplicialChain {
    let mut out = SimplicialChain::zero(1, a.ambient());
    let mut current: Option<(f64, crate::geometry::Point, crate::geometry::Point, Vec<f64>)> = None;
    for t in a.terms() {
        let p = t.simplex.vertices()[0].clone();
        let q = t.simplex.vertices()[1].clone();
        let dir = q.sub(&p);
        let len = crate::geometry::norm(&dir);
        let unit: Vec<f64> = dir.iter().map(|x| x / len).collect();
        if let Some((c, start, end, u)) = current.as_mut() {
            let aligned = crate::geometry::dot(u, &unit) > 1.0 - 1e-12;
            if *c == t.coef && *end == p && aligned {
                *end = q;
                continue;
            }
            out.push_unchecked(*c, OrientedSimplex::new_unchecked(vec![start.clone(), end.clone()]));
        }
        current = Some((t.coef, p, q, unit));
    }
    if let Some((c, start, end, _)) = current {
        out.push_unchecked(c, OrientedSimplex::new_unchecked(vec![start, end]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[&[f64]]) -> OrientedSimplex {
        OrientedSimplex::from_coords(rows).unwrap()
    }

    fn unit_square() -> SimplicialChain {
        SimplicialChain::from_terms(
            2,
            2,
            [
                (1.0, s(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]])),
                (1.0, s(&[&[0.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn mass_examples() {
        assert_eq!(mass(&SimplicialChain::zero(1, 2)).value, 0.0);
        let sq = mass(&unit_square());
        assert!((sq.value - 1.0).abs() < 1e-12);
        assert_eq!(sq.kind, MassKind::Exact);
        let t = s(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        let c = SimplicialChain::from_terms(2, 2, [(2.0, t.clone()), (1.0, t)]).unwrap();
        assert!((mass(&c).value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn projected_mass_examples() {
        let diag = SimplicialChain::single(s(&[&[0.0, 0.0], &[1.0, 1.0]]));
        assert!((projected_mass(&diag, 0, 1.0).unwrap().value - 1.0).abs() < 1e-15);
        let vert = SimplicialChain::single(s(&[&[0.0, 0.0], &[0.0, 1.0]]));
        assert_eq!(projected_mass(&vert, 0, 1.0).unwrap().value, 0.0);
        let tri = SimplicialChain::single(s(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 1.0]]));
        // plane 0 is the xy-plane: image (0,0),(1,0),(0,1)
        assert!((projected_mass(&tri, 0, 2.0).unwrap().value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lambda_out_of_range() {
        let diag = SimplicialChain::single(s(&[&[0.0, 0.0], &[1.0, 1.0]]));
        assert!(matches!(projected_mass(&diag, 0, 1.5), Err(Error::LambdaRange { .. })));
        assert!(matches!(natural_norm_base(&diag, -0.1), Err(Error::LambdaRange { .. })));
        assert!(matches!(projected_mass(&diag, 2, 1.0), Err(Error::PlaneIndex { .. })));
    }

    #[test]
    fn base_norm_examples() {
        let axis = SimplicialChain::single(s(&[&[0.0, 0.0], &[1.0, 0.0]]));
        assert!((natural_norm_base(&axis, 1.0).unwrap().value - 1.0).abs() < 1e-15);
        let diag = SimplicialChain::single(s(&[&[0.0, 0.0], &[1.0, 1.0]]));
        assert!((natural_norm_base(&diag, 1.0).unwrap().value - 2.0).abs() < 1e-15);
        let sq = unit_square();
        assert!((natural_norm_base(&sq, 2.0).unwrap().value - mass(&sq).value).abs() < 1e-15);
    }

    #[test]
    fn zero_power_convention() {
        let axis = SimplicialChain::single(s(&[&[0.0, 0.0], &[2.0, 0.0]]));
        // x-projection has mass 2 -> 2^0 = 1; y-projection is degenerate -> 0
        assert_eq!(natural_norm_base(&axis, 0.0).unwrap().value, 1.0);
        assert_eq!(natural_norm_base(&SimplicialChain::zero(1, 2), 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn concave_power_prefers_merged_runs() {
        let halves = SimplicialChain::from_terms(
            1,
            2,
            [(1.0, s(&[&[0.0, 0.0], &[0.5, 0.0]])), (1.0, s(&[&[0.5, 0.0], &[1.0, 0.0]]))],
        )
        .unwrap();
        let v = projected_mass(&halves, 0, 0.5).unwrap();
        assert!((v.value - 1.0).abs() < 1e-15);
        assert_eq!(v.kind, MassKind::UpperBound);
    }
}
