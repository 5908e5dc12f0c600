//! Dense two-phase simplex method for `min c·x  s.t.  A x = b, x ≥ 0`.
//!
//! Pivoting follows Bland's rule (lowest eligible index for both the
//! entering and the leaving variable), which cannot cycle and makes the
//! returned vertex a deterministic function of the input.

use crate::error::{Error, Result};

const COST_EPS: f64 = 1e-10;
const PIVOT_EPS: f64 = 1e-11;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    costs: Vec<f64>,
    rows: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a nonnegative variable with the given cost; returns its index.
    pub fn add_var(&mut self, cost: f64) -> usize {
        self.costs.push(cost);
        self.costs.len() - 1
    }

    pub fn add_equality(&mut self, coeffs: Vec<(usize, f64)>, rhs: f64) {
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    pub fn num_vars(&self) -> usize {
        self.costs.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn solve(&self, max_iterations: usize) -> Result<LpSolution> {
        Tableau::build(self).run(self, max_iterations)
    }
}

struct Tableau {
    /// m rows of width `cols + 1`; the last entry is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    n_orig: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.costs.len();
        let m = lp.rows.len();
        let mut dense: Vec<Vec<f64>> = Vec::with_capacity(m);
        for (row, &b) in lp.rows.iter().zip(&lp.rhs) {
            let mut r = vec![0.0; n + 1];
            for &(j, v) in row {
                r[j] += v;
            }
            r[n] = b;
            if b < 0.0 {
                r.iter_mut().for_each(|v| *v = -*v);
            }
            dense.push(r);
        }
        // reuse unit columns as the starting basis where possible
        let mut basis = vec![usize::MAX; m];
        let mut col_used = vec![false; n];
        for j in 0..n {
            let mut hit = None;
            let mut unit = true;
            for (i, r) in dense.iter().enumerate() {
                if r[j] != 0.0 {
                    if r[j] == 1.0 && hit.is_none() {
                        hit = Some(i);
                    } else {
                        unit = false;
                        break;
                    }
                }
            }
            if let (true, Some(i)) = (unit, hit) {
                if basis[i] == usize::MAX && !col_used[j] {
                    basis[i] = j;
                    col_used[j] = true;
                }
            }
        }
        let n_art = basis.iter().filter(|&&b| b == usize::MAX).count();
        let cols = n + n_art;
        let mut t = Vec::with_capacity(m);
        let mut next_art = n;
        for (i, r) in dense.into_iter().enumerate() {
            let mut row = vec![0.0; cols + 1];
            row[..n].copy_from_slice(&r[..n]);
            row[cols] = r[n];
            if basis[i] == usize::MAX {
                row[next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
            t.push(row);
        }
        Self { t, basis, cols, n_orig: n }
    }

    fn reduced_costs(&self, costs: &[f64]) -> Vec<f64> {
        let mut z: Vec<f64> = (0..=self.cols).map(|j| if j < self.cols { costs[j] } else { 0.0 }).collect();
        for (i, row) in self.t.iter().enumerate() {
            let cb = costs[self.basis[i]];
            if cb != 0.0 {
                for (zj, v) in z.iter_mut().zip(row) {
                    *zj -= cb * v;
                }
            }
        }
        z
    }

    fn pivot(&mut self, r: usize, c: usize, z: &mut [f64]) {
        let p = self.t[r][c];
        self.t[r].iter_mut().for_each(|v| *v /= p);
        let pivot_row = self.t[r].clone();
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| pivot_row[j] != 0.0).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for &j in &nz {
                        row[j] -= f * pivot_row[j];
                    }
                    row[c] = 0.0;
                }
            }
        }
        let f = z[c];
        if f != 0.0 {
            for &j in &nz {
                z[j] -= f * pivot_row[j];
            }
            z[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over columns `< allowed`. Returns the number
    /// of pivots performed.
    fn iterate(&mut self, z: &mut [f64], allowed: usize, budget: usize) -> Result<usize> {
        let mut iters = 0;
        loop {
            let Some(enter) = (0..allowed).find(|&j| z[j] < -COST_EPS) else {
                return Ok(iters);
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.t.iter().enumerate() {
                let a = row[enter];
                if a > PIVOT_EPS {
                    let ratio = row[self.cols] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            if ratio < best - 1e-12 || (ratio <= best + 1e-12 && self.basis[i] < self.basis[k]) {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded);
            };
            if iters >= budget {
                return Err(Error::IterationLimit(budget));
            }
            self.pivot(r, enter, z);
            iters += 1;
        }
    }

    fn run(mut self, lp: &LinearProgram, max_iterations: usize) -> Result<LpSolution> {
        let mut iterations = 0;
        if self.cols > self.n_orig {
            let phase1: Vec<f64> = (0..self.cols).map(|j| if j >= self.n_orig { 1.0 } else { 0.0 }).collect();
            let mut z = self.reduced_costs(&phase1);
            iterations += self.iterate(&mut z, self.cols, max_iterations)?;
            let infeasibility: f64 = self
                .basis
                .iter()
                .zip(&self.t)
                .filter(|(&b, _)| b >= self.n_orig)
                .map(|(_, row)| row[self.cols])
                .sum();
            let scale = 1.0 + lp.rhs.iter().map(|b| b.abs()).fold(0.0, f64::max);
            if infeasibility > 1e-9 * scale {
                return Err(Error::Infeasible);
            }
            // drive remaining artificials out of the basis, or drop redundant rows
            let mut i = 0;
            while i < self.t.len() {
                if self.basis[i] >= self.n_orig {
                    match (0..self.n_orig).find(|&j| self.t[i][j].abs() > 1e-9) {
                        Some(j) => {
                            self.pivot(i, j, &mut z);
                            i += 1;
                        }
                        None => {
                            self.t.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }
        let mut costs = lp.costs.clone();
        costs.resize(self.cols, 0.0);
        let mut z = self.reduced_costs(&costs);
        iterations += self.iterate(&mut z, self.n_orig, max_iterations.saturating_sub(iterations))?;
        let mut x = vec![0.0; self.n_orig];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_orig {
                x[b] = self.t[i][self.cols].max(0.0);
            }
        }
        let objective = x.iter().zip(&lp.costs).map(|(a, c)| a * c).sum();
        Ok(LpSolution { x, objective, iterations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-3.0);
        let y = lp.add_var(-5.0);
        let s: Vec<usize> = (0..3).map(|_| lp.add_var(0.0)).collect();
        lp.add_equality(vec![(x, 1.0), (s[0], 1.0)], 4.0);
        lp.add_equality(vec![(y, 2.0), (s[1], 1.0)], 12.0);
        lp.add_equality(vec![(x, 3.0), (y, 2.0), (s[2], 1.0)], 18.0);
        let sol = lp.solve(1000).unwrap();
        assert!((sol.objective + 36.0).abs() < 1e-9);
        assert!((sol.x[x] - 2.0).abs() < 1e-9 && (sol.x[y] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn needs_phase_one() {
        // min x + y s.t. x + 2y = 4, x - y = 1
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0);
        let y = lp.add_var(1.0);
        lp.add_equality(vec![(x, 1.0), (y, 2.0)], 4.0);
        lp.add_equality(vec![(x, 1.0), (y, -1.0)], 1.0);
        let sol = lp.solve(100).unwrap();
        assert!((sol.x[x] - 2.0).abs() < 1e-9 && (sol.x[y] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0);
        lp.add_equality(vec![(x, 1.0)], -1.0);
        assert!(matches!(lp.solve(100), Err(Error::Infeasible)));

        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0);
        let y = lp.add_var(0.0);
        lp.add_equality(vec![(x, 1.0), (y, -1.0)], 0.0);
        assert!(matches!(lp.solve(100), Err(Error::Unbounded)));
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(1.0);
        let y = lp.add_var(2.0);
        lp.add_equality(vec![(x, 1.0), (y, 1.0)], 1.0);
        lp.add_equality(vec![(x, 2.0), (y, 2.0)], 2.0);
        let sol = lp.solve(100).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iteration_limit() {
        let mut lp = LinearProgram::new();
        let x = lp.add_var(-1.0);
        let s = lp.add_var(0.0);
        lp.add_equality(vec![(x, 2.0), (s, 1.0)], 1.0);
        assert!(matches!(lp.solve(0), Err(Error::IterationLimit(0))));
    }
}
