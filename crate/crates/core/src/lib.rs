//! Simplicial chains in ℝᵐ with mass, flat and λ-natural norms, exact
//! integration of polynomial differential forms, and approximator
//! sequences for nonsmooth curves.
//!
//! Chains are finite term lists of oriented simplices with real
//! coefficients. Norms over infinite families of spanning chains are
//! always reported as upper bounds together with an explicit witness.

pub mod chain;
pub mod complex;
pub mod error;
pub mod experiments;
pub mod forms;
pub mod fractal;
pub mod geometry;
pub mod io;
pub mod lebesgue;
pub mod lp;
pub mod mass;
pub mod norms;
pub mod poly;
pub mod random;
pub mod refine;
pub mod report;

pub use complex::SpanningComplex;
pub use chain::{coordinate_planes, OrientedSimplex, SimplicialChain};

pub use error::{Error, Result};
pub use forms::{FormNorm, PolynomialForm};
pub use geometry::Point;
pub use mass::{MassKind, MassValue};
pub use norms::{NormBound, SpanningWitness, WitnessPlane};

pub use poly::Polynomial;
