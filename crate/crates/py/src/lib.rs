//! Python module `natchain`. Chains, forms, witnesses and complexes cross
//! the boundary as JSON text in the same format as the CLI files.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use natchain_core::experiments as ex;
use natchain_core::fractal::{self, ApproximatorSequence};
use natchain_core::io::{from_json_str, to_json_string};
use natchain_core::lebesgue::{lebesgue_consistency, Piece, StepFunction};
use natchain_core::mass::term_mass;
use natchain_core::norms::{flat_norm_bound, natural_norm_eval};
use natchain_core::{forms, PolynomialForm, SimplicialChain, SpanningComplex, SpanningWitness};

fn err(e: natchain_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn chain(text: &str) -> PyResult<SimplicialChain> {
    from_json_str(text).map_err(err)
}

fn form(text: &str) -> PyResult<PolynomialForm> {
    from_json_str(text).map_err(err)
}

/// Mass of a chain, summed term by term.
#[pyfunction]
fn mass(chain_json: &str) -> PyResult<f64> {
    Ok(term_mass(&chain(chain_json)?))
}

/// Boundary of a chain as JSON.
#[pyfunction]
fn boundary(chain_json: &str) -> PyResult<String> {
    let b = chain(chain_json)?.boundary().map_err(err)?;
    to_json_string(&b).map_err(err)
}

#[pyfunction]
fn integrate(chain_json: &str, form_json: &str) -> PyResult<f64> {
    form(form_json)?.integrate(&chain(chain_json)?).map_err(err)
}

/// `|∫_A dω − ∫_{∂A} ω|`.
#[pyfunction]
fn stokes_residual(chain_json: &str, form_json: &str) -> PyResult<f64> {
    forms::stokes_check(&form(form_json)?, &chain(chain_json)?).map_err(err)
}

/// Natural-norm bound and the witness used, as `(value, witness_json)`.
/// Without a witness the zero witness is evaluated.
#[pyfunction]
#[pyo3(signature = (chain_json, lam, witness_json=None))]
fn natural_norm(chain_json: &str, lam: f64, witness_json: Option<&str>) -> PyResult<(f64, String)> {
    let w: SpanningWitness = match witness_json {
        Some(t) => from_json_str(t).map_err(err)?,
        None => SpanningWitness::zero(lam),
    };
    let b = natural_norm_eval(&chain(chain_json)?, lam, &w).map_err(err)?;
    Ok((b.value, to_json_string(&b.witness).map_err(err)?))
}

#[pyfunction]
fn flat_norm(chain_json: &str, complex_json: &str) -> PyResult<f64> {
    let k: SpanningComplex = from_json_str(complex_json).map_err(err)?;
    Ok(flat_norm_bound(&chain(chain_json)?, &k).map_err(err)?.value)
}

#[pyfunction]
fn koch_chain(k: usize) -> PyResult<String> {
    to_json_string(&fractal::koch_chain(k).map_err(err)?).map_err(err)
}

/// `(chain_json, witness_json)` for the replica curve at level `k`.
#[pyfunction]
fn harrison_curve_chain(k: usize) -> PyResult<(String, String)> {
    let (a, w) = fractal::harrison_curve_chain(k).map_err(err)?;
    Ok((to_json_string(&a).map_err(err)?, to_json_string(&w).map_err(err)?))
}

/// `(limit estimate, fitted ratio, verdict)` for a 1-form along Koch
/// levels `0..=max_level`.
#[pyfunction]
#[pyo3(signature = (form_json, max_level=10, tol=1e-4))]
fn koch_limit(form_json: &str, max_level: usize, tol: f64) -> PyResult<(f64, f64, String)> {
    let seq = ApproximatorSequence::koch(0..=max_level, None).map_err(err)?;
    let (v, d) = fractal::limit_integral(&form(form_json)?, &seq, tol).map_err(err)?;
    Ok((v, d.ratio, format!("{:?}", d.verdict).to_lowercase()))
}

/// `(closed form, area integral, boundary integral)` for a step function
/// given as `(a, b, value)` triples.
#[pyfunction]
fn lebesgue(pieces: Vec<(f64, f64, f64)>) -> PyResult<(f64, f64, f64)> {
    let f = StepFunction::new(pieces.into_iter().map(|(a, b, v)| Piece { a, b, v }).collect()).map_err(err)?;
    let t = lebesgue_consistency(&f).map_err(err)?;
    Ok((t.closed_form, t.area, t.boundary))
}

/// Flat norm of the regular polygon boundary over its subdivided disk.
#[pyfunction]
#[pyo3(signature = (sides, refinements=1))]
fn flat_norm_polygon(sides: usize, refinements: usize) -> PyResult<f64> {
    let r = ex::flatnorm_polygon(sides, refinements, ex::FLAT_DISK_TOL).map_err(err)?;
    Ok(r.summary["value"].as_f64().unwrap_or(f64::NAN))
}

#[pymodule]
fn natchain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mass, m)?)?;
    m.add_function(wrap_pyfunction!(boundary, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(stokes_residual, m)?)?;
    m.add_function(wrap_pyfunction!(natural_norm, m)?)?;
    m.add_function(wrap_pyfunction!(flat_norm, m)?)?;
    m.add_function(wrap_pyfunction!(koch_chain, m)?)?;
    m.add_function(wrap_pyfunction!(harrison_curve_chain, m)?)?;
    m.add_function(wrap_pyfunction!(koch_limit, m)?)?;
    m.add_function(wrap_pyfunction!(lebesgue, m)?)?;
    m.add_function(wrap_pyfunction!(flat_norm_polygon, m)?)?;
    Ok(())
}
