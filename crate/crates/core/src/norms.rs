//! Upper bounds for the flat norm and the recursive λ-natural norm.
//!
//! Every infimum over spanning chains is taken relative to an explicit
//! finite [`SpanningComplex`] or an explicit witness tree, so every value
//! returned here is an upper bound certified by its witness.

use crate::chain::{coordinate_planes, SimplicialChain};
use crate::complex::SpanningComplex;
use crate::error::{Error, Result};
use crate::forms::PolynomialForm;
use crate::geometry::BoundingBox;
use crate::lp::LinearProgram;
use crate::mass::{natural_norm_base, term_mass, term_projected_mass};
use crate::refine::simplify;

/// Simplex pivots allowed for a single flat-norm program.
const FLAT_NORM_PIVOTS: usize = 2_000_000;

/// Spanning chain chosen for one coordinate plane, together with the
/// witness for its own norm.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessPlane {
    pub chain: SimplicialChain,
    pub children: Vec<WitnessPlane>,
}

impl WitnessPlane {
    pub fn leaf(chain: SimplicialChain) -> Self {
        Self { chain, children: Vec::new() }
    }
}

/// Tree of spanning chains. `planes[i]` is the chain `C_i` used for plane
/// `i`; an empty list means `C = 0` everywhere, and a single entry is
/// shared by all planes.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanningWitness {
    pub lambda: f64,
    pub planes: Vec<WitnessPlane>,
}

impl SpanningWitness {
    pub fn zero(lambda: f64) -> Self {
        Self { lambda, planes: Vec::new() }
    }

    /// Height of the tree, counting the root level.
    pub fn depth(&self) -> usize {
        fn d(p: &[WitnessPlane]) -> usize {
            p.iter().map(|q| 1 + d(&q.children)).max().unwrap_or(0)
        }
        1 + d(&self.planes)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormBound {
    pub value: f64,
    pub witness: SpanningWitness,
    /// Per-plane `M_{n,π_i}(A − ∂C_i)` at the top level.
    pub residual_masses: Vec<f64>,
    /// Per-plane `M_{n,π_i}(A − ∂C_i) + |C_i|^♮_λ`.
    pub contributions: Vec<f64>,
}

/// `M_n(A − ∂C) + M_{n+1}(C)` on the canonical representative of the
/// residual.
pub fn flat_norm_eval(a: &SimplicialChain, c: &SimplicialChain) -> Result<(f64, f64)> {
    let residual = if c.is_empty() { a.clone() } else { a.collapse_minus_boundary(c)? };
    let r = term_mass(&simplify(&residual).0);
    Ok((r + term_mass(&c.collapse()), r))
}

/// Minimizes `Σ_τ M_n(τ)|x_τ − (∂c)_τ| + Σ_ρ M_{n+1}(ρ)|c_ρ|` over real
/// coefficients `c` on the (n+1)-cells of `k`.
pub fn flat_norm_bound(a: &SimplicialChain, k: &SpanningComplex) -> Result<NormBound> {
    let n = a.dim();
    if k.base_dim() != n {
        return Err(Error::Dimension(format!("complex over {}-chains for a {n}-chain", k.base_dim())));
    }
    let x = k.coefficients(a, 0)?;
    let base_cost: Vec<f64> = k.cells(0).iter().map(|c| c.mass()).collect();
    let span_cost: Vec<f64> = k.cells(1).iter().map(|c| c.mass()).collect();
    let c = solve_span_program(k, 0, &x, &base_cost, &span_cost, FLAT_NORM_PIVOTS)?;
    let chain = k.chain(1, &c);
    let (value, residual) = flat_norm_eval(a, &chain)?;
    Ok(NormBound {
        value,
        witness: SpanningWitness { lambda: (n + 1) as f64, planes: vec![WitnessPlane::leaf(chain)] },
        residual_masses: vec![residual],
        contributions: vec![value],
    })
}

/// LP for one linear span level with constant target `x` on `level`.
fn solve_span_program(
    k: &SpanningComplex,
    level: usize,
    x: &[f64],
    residual_cost: &[f64],
    span_cost: &[f64],
    pivots: usize,
) -> Result<Vec<f64>> {
    let mut lp = LinearProgram::new();
    let nspan = span_cost.len();
    let plus: Vec<usize> = span_cost.iter().map(|&c| lp.add_var(c)).collect();
    let minus: Vec<usize> = span_cost.iter().map(|&c| lp.add_var(c)).collect();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); x.len()];
    for (rho, faces) in k.incidence(level).iter().enumerate().take(nspan) {
        for &(tau, s) in faces {
            rows[tau].push((plus[rho], s));
            rows[tau].push((minus[rho], -s));
        }
    }
    for (tau, mut row) in rows.into_iter().enumerate() {
        let rp = lp.add_var(residual_cost[tau]);
        let rm = lp.add_var(residual_cost[tau]);
        row.push((rp, 1.0));
        row.push((rm, -1.0));
        lp.add_equality(row, x[tau]);
    }
    let sol = lp.solve(pivots)?;
    Ok((0..nspan).map(|i| sol.x[plus[i]] - sol.x[minus[i]]).collect())
}

fn check_lambda_above(a: &SimplicialChain, lambda: f64) -> Result<()> {
    let (n, m) = (a.dim() as f64, a.ambient() as f64);
    if !(lambda > n && lambda <= m) {
        return Err(Error::LambdaRange { lambda, lo: n, hi: m });
    }
    Ok(())
}

/// Evaluates `Σ_i [ M_{n,π_i}(A − ∂C_i) + |C_i|^♮_λ ]` along the witness
/// tree, bottoming out in [`natural_norm_base`] once the chain dimension
/// reaches λ.
pub fn natural_norm_eval(a: &SimplicialChain, lambda: f64, w: &SpanningWitness) -> Result<NormBound> {
    check_lambda_above(a, lambda)?;
    if (w.lambda - lambda).abs() > 1e-12 {
        return Err(Error::Witness(format!("witness built for lambda {} used at {lambda}", w.lambda)));
    }
    let (value, residual_masses, contributions) = eval_level(a, lambda, &w.planes)?;
    Ok(NormBound { value, witness: w.clone(), residual_masses, contributions })
}

fn eval_level(a: &SimplicialChain, lambda: f64, planes: &[WitnessPlane]) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let n = a.dim();
    if lambda <= n as f64 {
        if planes.iter().any(|p| !p.chain.is_empty()) {
            return Err(Error::Witness(format!("spanning chain below a {n}-chain at lambda {lambda} (base case)")));
        }
        let v = natural_norm_base(a, lambda)?.value;
        return Ok((v, Vec::new(), vec![v]));
    }
    let axes = coordinate_planes(a.ambient(), n);
    if !(planes.is_empty() || planes.len() == 1 || planes.len() == axes.len()) {
        return Err(Error::Witness(format!("{} witness planes for {} coordinate planes", planes.len(), axes.len())));
    }
    let mut total = 0.0;
    let mut residuals = Vec::with_capacity(axes.len());
    let mut contributions = Vec::with_capacity(axes.len());
    // the same C may serve several planes; evaluate each distinct entry once
    let mut cache: Vec<Option<(SimplicialChain, f64)>> = vec![None; planes.len()];
    for (i, ax) in axes.iter().enumerate() {
        let slot = match planes.len() {
            0 => None,
            1 => Some(0),
            _ => Some(i),
        };
        let (residual_chain, child) = match slot {
            None => (simplify(a).0, 0.0),
            Some(s) => {
                if cache[s].is_none() {
                    let p = &planes[s];
                    if p.chain.is_empty() {
                        cache[s] = Some((simplify(a).0, 0.0));
                    } else {
                        if p.chain.dim() != n + 1 || p.chain.ambient() != a.ambient() {
                            return Err(Error::Witness(format!(
                                "plane {i} holds a {}-chain in R^{}, expected a {}-chain in R^{}",
                                p.chain.dim(),
                                p.chain.ambient(),
                                n + 1,
                                a.ambient()
                            )));
                        }
                        let residual = simplify(&a.collapse_minus_boundary(&p.chain)?).0;
                        let (child, _, _) = eval_level(&p.chain, lambda, &p.children)?;
                        cache[s] = Some((residual, child));
                    }
                }
                cache[s].clone().unwrap()
            }
        };
        let r = term_projected_mass(&residual_chain, ax, n as f64);
        residuals.push(r);
        contributions.push(r + child);
        total += r + child;
    }
    Ok((total, residuals, contributions))
}

/// Best witness over the cells of `k`: for each top plane a single linear
/// program jointly chooses the spanning chains of every recursion level.
/// Coefficients are real; per-cell costs are `M(π σ)^(λ/k)` so the program
/// is exact relative to `k` for every admissible λ. `budget` caps the simplex
/// pivots per plane. The returned value is the evaluation of the returned
/// witness and never exceeds the zero-witness evaluation.
pub fn natural_norm_search(a: &SimplicialChain, lambda: f64, k: &SpanningComplex, budget: usize) -> Result<NormBound> {
    check_lambda_above(a, lambda)?;
    if budget == 0 {
        return Err(Error::InvalidArgument("search budget must be positive".into()));
    }
    let n = a.dim();
    if (lambda - n as f64).floor() > 2.0 {
        return Err(Error::Unsupported(format!("recursion depth for lambda - n = {}", lambda - n as f64)));
    }
    if k.base_dim() != n {
        return Err(Error::Dimension(format!("complex over {}-chains for a {n}-chain", k.base_dim())));
    }
    let x = k.coefficients(a, 0)?;
    let m = a.ambient();
    let mut planes = Vec::new();
    for axes in coordinate_planes(m, n) {
        let mut lp = LinearProgram::new();
        let mut builder = SpanBuilder { k, lambda, lp: &mut lp };
        let target: Vec<Target> = x.iter().map(|&v| Target { vars: Vec::new(), constant: v }).collect();
        let plan = builder.level(0, &axes, &target);
        let sol = lp.solve(budget)?;
        planes.push(plan.extract(k, &sol.x));
    }
    let found = natural_norm_eval(a, lambda, &SpanningWitness { lambda, planes })?;
    let zero = natural_norm_eval(a, lambda, &SpanningWitness::zero(lambda))?;
    Ok(if found.value <= zero.value { found } else { zero })
}

#[derive(Clone)]
struct Target {
    vars: Vec<(usize, f64)>,
    constant: f64,
}

/// Variables of one spanning level inside the joint program.
struct LevelPlan {
    level: usize,
    plus: Vec<usize>,
    minus: Vec<usize>,
    children: Vec<LevelPlan>,
}

impl LevelPlan {
    fn extract(&self, k: &SpanningComplex, x: &[f64]) -> WitnessPlane {
        let coefs: Vec<f64> = self.plus.iter().zip(&self.minus).map(|(&p, &q)| x[p] - x[q]).collect();
        WitnessPlane {
            chain: k.chain(self.level + 1, &coefs),
            children: self.children.iter().map(|c| c.extract(k, x)).collect(),
        }
    }
}

struct SpanBuilder<'a> {
    k: &'a SpanningComplex,
    lambda: f64,
    lp: &'a mut LinearProgram,
}

impl SpanBuilder<'_> {
    /// Adds `M_{d,π}(X − ∂C) + |C|^♮_λ` for the chain `X` on `level`
    /// (dimension d) projected onto `axes`, returning the plan for `C`.
    fn level(&mut self, level: usize, axes: &[usize], target: &[Target]) -> LevelPlan {
        let k = self.k;
        let dim = k.base_dim() + level;
        let m = k.ambient();
        let spans = if level + 1 < k.depth() && dim < m { k.cells(level + 1) } else { &[] };
        let child_dim = dim + 1;
        let base_child = self.lambda <= child_dim as f64;
        let span_cost: Vec<f64> = if base_child {
            let planes = coordinate_planes(m, child_dim);
            spans
                .iter()
                .map(|c| {
                    planes
                        .iter()
                        .map(|ax| {
                            let pm = crate::mass::projected_simplex_mass(c, ax);
                            if pm == 0.0 { 0.0 } else { pm.powf(self.lambda / child_dim as f64) }
                        })
                        .sum()
                })
                .collect()
        } else {
            vec![0.0; spans.len()]
        };
        let plus: Vec<usize> = span_cost.iter().map(|&c| self.lp.add_var(c)).collect();
        let minus: Vec<usize> = span_cost.iter().map(|&c| self.lp.add_var(c)).collect();
        let mut rows: Vec<Vec<(usize, f64)>> = target
            .iter()
            .map(|t| t.vars.iter().map(|&(v, c)| (v, -c)).collect())
            .collect();
        if !spans.is_empty() {
            for (rho, faces) in k.incidence(level).iter().enumerate() {
                for &(tau, s) in faces {
                    rows[tau].push((plus[rho], s));
                    rows[tau].push((minus[rho], -s));
                }
            }
        }
        for (tau, mut row) in rows.into_iter().enumerate() {
            let w = crate::mass::projected_simplex_mass(&k.cells(level)[tau], axes);
            let rp = self.lp.add_var(w);
            let rm = self.lp.add_var(w);
            row.push((rp, 1.0));
            row.push((rm, -1.0));
            self.lp.add_equality(row, target[tau].constant);
        }
        let mut children = Vec::new();
        if !spans.is_empty() && !base_child {
            let child_target: Vec<Target> = plus
                .iter()
                .zip(&minus)
                .map(|(&p, &q)| Target { vars: vec![(p, 1.0), (q, -1.0)], constant: 0.0 })
                .collect();
            for ax in coordinate_planes(m, child_dim) {
                children.push(self.level(level + 1, &ax, &child_target));
            }
        }
        LevelPlan { level, plus, minus, children }
    }
}

/// `M_n(A − ∂C)‖ω‖₀ + M_{n+1}(C)‖dω‖₀` with rigorous sup bounds over the
/// bounding box of both chains. Dominates `|∫_A ω|`.
pub fn whitney_integral_bound(a: &SimplicialChain, c: &SimplicialChain, w: &PolynomialForm) -> Result<f64> {
    if w.degree() != a.dim() || w.ambient() != a.ambient() {
        return Err(Error::Dimension("form and chain differ in degree or ambient".into()));
    }
    if !c.is_empty() && (c.dim() != a.dim() + 1 || c.ambient() != a.ambient()) {
        return Err(Error::Dimension("spanning chain must have dimension n + 1".into()));
    }
    let bbox = BoundingBox::around(a.points().chain(c.points()), a.ambient());
    let (_, residual) = flat_norm_eval(a, c)?;
    let mut bound = residual * w.sup_bound(&bbox);
    if !c.is_empty() {
        bound += term_mass(&c.collapse()) * w.exterior_derivative()?.sup_bound(&bbox);
    }
    Ok(bound)
}
