//! Points in ℝᵐ and the small dense linear algebra the rest of the crate
//! needs (determinants, Gram matrices).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in ℝᵐ with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self(coords))
    }

    /// Caller guarantees finiteness; used on coordinates derived from
    /// already validated points.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Self(coords)
    }

    pub fn origin(m: usize) -> Self {
        Self(vec![0.0; m])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &Point) -> Vec<f64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        norm(&self.sub(other))
    }

    /// Orthogonal projection onto the coordinate subspace spanned by `axes`.
    pub fn select(&self, axes: &[usize]) -> Point {
        Point(axes.iter().map(|&a| self.0[a]).collect())
    }

    pub fn map(&self, f: impl Fn(usize, f64) -> f64) -> Point {
        Point::from_vec_unchecked(self.0.iter().enumerate().map(|(i, &c)| f(i, c)).collect())
    }

    /// Exact bit pattern key, with -0.0 folded into 0.0.
    pub(crate) fn bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&c| if c == 0.0 { 0 } else { c.to_bits() })
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Determinant of a square matrix given as rows, by Gaussian elimination
/// with partial pivoting. The empty matrix has determinant 1.
pub fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    match n {
        0 => return 1.0,
        1 => return rows[0][0],
        2 => return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let r = rows;
            return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        }
        _ => {}
    }
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut d = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            d = -d;
        }
        d *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    d
}

/// Gram matrix `G[a][b] = <v_a, v_b>`.
pub fn gram(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    vectors
        .iter()
        .map(|a| vectors.iter().map(|b| dot(a, b)).collect())
        .collect()
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Axis-aligned box `[lo_i, hi_i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidArgument("box corners must share a positive dimension".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| !(a <= b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidArgument("empty box".into()));
        }
        Ok(Self { lo, hi })
    }

    pub fn unit(m: usize) -> Self {
        Self { lo: vec![0.0; m], hi: vec![1.0; m] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn around<'a>(points: impl IntoIterator<Item = &'a Point>, m: usize) -> Self {
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for p in points {
            for (i, &c) in p.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        if lo[0].is_infinite() {
            return Self::unit(m);
        }
        Self { lo, hi }
    }

    pub fn diameter(&self) -> f64 {
        norm(&self.hi.iter().zip(&self.lo).map(|(h, l)| h - l).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants_agree_across_paths() {
        let m = vec![
            vec![2.0, -1.0, 0.5, 3.0],
            vec![1.0, 4.0, -2.0, 0.0],
            vec![0.0, 1.5, 1.0, -1.0],
            vec![3.0, 0.0, 2.0, 1.0],
        ];
        // cofactor expansion along the first row using the 3x3 closed form
        let mut expected = 0.0;
        for j in 0..4 {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            expected += sign * m[0][j] * det(&minor);
        }
        assert!((det(&m) - expected).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Point::new(vec![0.0, f64::NAN]).is_err());
        assert!(BoundingBox::new(vec![1.0], vec![0.0]).is_err());
    }
}
