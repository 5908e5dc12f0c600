use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use natchain_core::experiments as ex;
use natchain_core::io::read_json;
use natchain_core::lebesgue::StepFunction;
use natchain_core::report::ExperimentReport;
use natchain_core::{PolynomialForm, Result, SimplicialChain, SpanningComplex, SpanningWitness};

/// Experiments on simplicial chains, natural norms and nonsmooth curves.
///
/// Exit status: 0 when the verdict is the expected one, 2 when it is not,
/// 1 on bad input.
#[derive(Parser)]
#[command(name = "natchain", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Directory for the report JSON and CSV.
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,
    /// Tolerance; each experiment has its own default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Simplex pivots per plane for natural-norm search.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    /// Seed for random test cases.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Natural-norm bound of a chain, or the structural property suite.
    Norm {
        #[arg(long, required_unless_present = "structural")]
        chain: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
        #[arg(long, conflicts_with = "complex")]
        witness: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Run ∂∂ = 0, projection and refinement checks on random cases.
        #[arg(long, conflicts_with_all = ["chain", "witness", "complex"])]
        structural: bool,
    },
    /// Integral of a form over a chain, or random Whitney-bound triples.
    Integrate {
        #[arg(long, requires = "form", required_unless_present = "whitney_random")]
        chain: Option<PathBuf>,
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["chain", "form"])]
        whitney_random: Option<usize>,
    },
    /// Stokes residual for a chain and an (n-1)-form, or random cases.
    Stokes {
        #[arg(long, requires = "form", required_unless_present = "random")]
        chain: Option<PathBuf>,
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["chain", "form"])]
        random: Option<usize>,
    },
    /// Limit of the integral of x dy along Koch levels, with norm ratios.
    KochConvergence {
        #[arg(long, default_value_t = 10)]
        levels: usize,
        #[arg(long, default_value_t = 8)]
        ratio_levels: usize,
    },
    /// Witness bounds for the replica curve in R^3.
    HarrisonBound {
        /// Levels to evaluate (repeatable); all supported levels by default.
        #[arg(long = "level")]
        levels: Vec<usize>,
    },
    /// Integral of x dy along spiral truncations; divergence is expected.
    SpiralDivergence {
        #[arg(long, default_value_t = 8)]
        levels: usize,
    },
    /// Stokes on Koch snowflake regions.
    SnowflakeStokes {
        #[arg(long, default_value_t = 6)]
        levels: usize,
        /// 1-form on the plane; x^2 y dx + x y^2 dy by default.
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Closed form, area and boundary integrals of step functions.
    Lebesgue {
        #[arg(long, required_unless_present = "random")]
        step: Option<PathBuf>,
        #[arg(long, conflicts_with = "step")]
        random: Option<usize>,
    },
    /// Flat-norm bound over a complex, or over a regular polygon's disk.
    Flatnorm {
        #[arg(long, requires = "complex", required_unless_present = "polygon")]
        chain: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["chain", "complex"])]
        polygon: Option<usize>,
        #[arg(long, default_value_t = 1)]
        refinements: usize,
    },
}

fn path(p: &Option<PathBuf>) -> &Path {
    p.as_deref().expect("required by the argument parser")
}

fn run(cli: &Cli) -> Result<ExperimentReport> {
    let c = &cli.common;
    let tol = |d: f64| c.tol.unwrap_or(d);
    match &cli.command {
        Command::Norm { structural: true, .. } => ex::structural(1000, 1000, 20, c.seed, tol(ex::PYTHAGORAS_TOL)),
        Command::Norm { chain, lambda, witness, complex, .. } => {
            let a: SimplicialChain = read_json(path(chain))?;
            let w: Option<SpanningWitness> = witness.as_deref().map(read_json).transpose()?;
            let k: Option<SpanningComplex> = complex.as_deref().map(read_json).transpose()?;
            ex::norm(&a, *lambda, w.as_ref(), k.as_ref(), c.budget)
        }
        Command::Integrate { whitney_random: Some(n), .. } => ex::whitney_random(*n, c.seed, tol(ex::WHITNEY_SLACK)),
        Command::Integrate { chain, form, .. } => {
            let a: SimplicialChain = read_json(path(chain))?;
            let w: PolynomialForm = read_json(path(form))?;
            ex::integrate(&a, &w)
        }
        Command::Stokes { random: Some(n), .. } => ex::stokes_random(*n, c.seed, tol(ex::STOKES_TOL)),
        Command::Stokes { chain, form, .. } => {
            let a: SimplicialChain = read_json(path(chain))?;
            let w: PolynomialForm = read_json(path(form))?;
            ex::stokes(&a, &w, tol(ex::STOKES_TOL))
        }
        Command::KochConvergence { levels, ratio_levels } => ex::koch_convergence(*levels, *ratio_levels, tol(ex::LIMIT_TOL)),
        Command::HarrisonBound { levels } => {
            let levels = if levels.is_empty() { vec![1, 2, 3] } else { levels.clone() };
            ex::harrison_bound(&levels)
        }
        Command::SpiralDivergence { levels } => ex::spiral_divergence(*levels, tol(ex::LIMIT_TOL)),
        Command::SnowflakeStokes { levels, form } => {
            let w = match form {
                Some(p) => read_json(p)?,
                None => ex::default_snowflake_form(),
            };
            ex::snowflake_stokes(*levels, &w, tol(ex::STOKES_TOL))
        }
        Command::Lebesgue { random: Some(n), .. } => ex::lebesgue_random(*n, c.seed, tol(ex::LEBESGUE_TOL)),
        Command::Lebesgue { step, .. } => {
            let f: StepFunction = read_json(path(step))?;
            ex::lebesgue(&f, tol(ex::LEBESGUE_TOL))
        }
        Command::Flatnorm { polygon: Some(n), refinements, .. } => ex::flatnorm_polygon(*n, *refinements, tol(ex::FLAT_DISK_TOL)),
        Command::Flatnorm { chain, complex, .. } => {
            let a: SimplicialChain = read_json(path(chain))?;
            let k: SpanningComplex = read_json(path(complex))?;
            ex::flatnorm(&a, &k)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // usage errors are input errors; 2 is reserved for verdicts
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match report.write(&cli.common.out) {
        Ok((json, _)) => println!("{}: {:?} ({})", report.name, report.verdict, json.display()),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
