//! Command-line experiments on the arithmetic Šeba billiard.
//!
//! Every subcommand maps onto one library operation and emits flat records
//! as CSV or JSON. Sweeps run in parallel and are emitted in grid order.

// `!(x > y)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod output;

use std::fmt;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use seba_core::arithmetic::{landau_ratio, r2, representable_count, shells_up_to};
use seba_core::multifractal::{
    d_star, d_star_exponent, dq_estimates, moment_sum, moment_via_zeta, renyi_entropy,
    shannon_entropy, spectral_measure, symmetry_check, theoretical_dq, Normalization,
};
use seba_core::spectral::{
    laplace_spectrum, solve_secular, synthesize_sequence, NewEigenvalueSequence,
};
use seba_core::zeta::{epstein_zeta, phi_q, QuadraticForm};

pub use output::{emit, Field, Format, Record};

/// Environment variable holding the worker thread count.
pub const THREADS_VAR: &str = "SEBA_THREADS";

#[derive(Debug)]
pub enum CliError {
    /// A precondition of a library operation failed.
    Domain(seba_core::Error),
    /// Bad invocation or configuration.
    Usage(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<seba_core::Error> for CliError {
    fn from(e: seba_core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "seba",
    version,
    about = "Spectra, measures and fractal exponents of the arithmetic Šeba billiard"
)]
pub struct Cli {
    /// Output encoding
    #[arg(long, value_enum, global = true, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Append a wall_time_s column (makes output run-dependent)
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Secular,
    Synthetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Annulus,
    NormalOrder,
    NearestShell,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Annulus => Normalization::AnnulusAverage,
            NormalizationArg::NormalOrder => Normalization::NormalOrder,
            NormalizationArg::NearestShell => Normalization::NearestShell,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: f64 = a
        .trim()
        .parse()
        .map_err(|e| format!("bad window start {a:?}: {e}"))?;
    let hi: f64 = b
        .trim()
        .parse()
        .map_err(|e| format!("bad window end {b:?}: {e}"))?;
    if !(lo <= hi) {
        return Err(format!("window start {lo} exceeds end {hi}"));
    }
    Ok(Window { lo, hi })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of representations of n as an ordered sum of two squares
    R2 { n: u64 },
    /// Integers up to X that are sums of two squares, with r2
    Shells {
        #[arg(long = "max")]
        max: f64,
    },
    /// Laplace eigenvalues on the square torus up to X with multiplicities
    Spectrum {
        #[arg(long = "max")]
        max: f64,
    },
    /// New eigenvalues of the point perturbation: roots of the secular
    /// equation, or a synthetic sequence with mean distance (log x)^alpha
    Newvals {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Extension parameter c of the secular equation
        #[arg(long, allow_hyphen_values = true, required_if_eq("mode", "secular"))]
        coupling: Option<f64>,
        /// Coupling exponent of the synthetic sequence
        #[arg(long, allow_hyphen_values = true, required_if_eq("mode", "synthetic"))]
        alpha: Option<f64>,
        #[arg(long = "max")]
        max: f64,
        /// Lower end of the secular window
        #[arg(long = "min", default_value_t = 0.0)]
        min: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shell masses of the spectral measure at lambda
    Measure {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Moment sums of the spectral measure, from the atoms and from shifted zeta values
    Moments {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Rényi and Shannon entropies of the spectral measure
    Entropy {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Fractal exponents D_q averaged over a window of a synthetic strong-coupling sequence
    Dq {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[arg(long, value_parser = parse_window)]
        window: Window,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "annulus")]
        normalization: NormalizationArg,
    },
    /// Strong-coupling law D_q = (1/(2 alpha))(1 - 1/(2q)) log 2 on its admissible range
    DqTheory {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
    },
    /// Epstein zeta function of Q = a^2 x^2 + a^-2 y^2, continued to the whole plane
    Epstein {
        #[arg(long)]
        a: f64,
        /// RE or RE,IM
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        s: Vec<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Residual of the functional equation zeta_Q(1-s) = phi_Q(s) zeta_Q(s)
    Funceq {
        #[arg(long)]
        a: f64,
        #[arg(
            long = "s-grid",
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        s_grid: Vec<f64>,
    },
    /// Ground-state values d*_q = zeta_Q(2q) and exponents D*_q
    Dstar {
        #[arg(long)]
        a: f64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        q: Vec<f64>,
    },
    /// Reflection symmetry of the ground-state exponents about q = 1/4
    Symmetry {
        #[arg(long)]
        a: f64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        q: Vec<f64>,
    },
    /// Landau's count of sums of two squares: B(x) sqrt(log x) / x
    Landau {
        #[arg(long = "x-grid", value_delimiter = ',', required = true)]
        x_grid: Vec<f64>,
    },
}

/// Ascending, duplicate-free copy of a parameter grid.
fn sorted_grid(values: &[f64]) -> Result<Vec<f64>> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(CliError::Usage(format!("grid value {v} is not finite")));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    Ok(v)
}

/// Runs `f` over a grid in parallel, keeping grid order.
fn sweep<F>(grid: &[f64], f: F) -> Result<Vec<Record>>
where
    F: Fn(f64) -> Result<Record> + Sync,
{
    grid.par_iter().map(|&x| f(x)).collect()
}

fn form(a: f64) -> Result<QuadraticForm> {
    Ok(QuadraticForm::new(a)?)
}

fn sequence_records(seq: &NewEigenvalueSequence, echo: &Record) -> Vec<Record> {
    seq.eigenvalues
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let mut r = echo.clone();
            r.push("index", k as u64);
            r.push("lambda", e.lambda);
            r.push("lower", e.lower);
            r.push("upper", e.upper);
            r.push("nearest_laplace", e.nearest_laplace);
            r.push("delta", e.delta);
            r
        })
        .collect()
}

/// Records for one subcommand.
pub fn execute(command: &Command) -> Result<Vec<Record>> {
    let records = match command {
        Command::R2 { n } => vec![Record::new().with("n", *n).with("r2", r2(*n)?)],
        Command::Shells { max } => shells_up_to(*max)?
            .into_iter()
            .map(|s| Record::new().with("n", s.n).with("r2", s.r2))
            .collect(),
        Command::Spectrum { max } => laplace_spectrum(*max)?
            .into_iter()
            .map(|s| {
                Record::new()
                    .with("eigenvalue", s.n)
                    .with("multiplicity", s.r2)
            })
            .collect(),
        Command::Newvals {
            mode,
            coupling,
            alpha,
            max,
            min,
            seed,
        } => match mode {
            Mode::Secular => {
                let c = coupling.ok_or_else(|| {
                    CliError::Usage("--coupling is required in secular mode".into())
                })?;
                let seq = solve_secular(*min, *max, c)?;
                sequence_records(
                    &seq,
                    &Record::new().with("mode", "secular").with("coupling", c),
                )
            }
            Mode::Synthetic => {
                let a = alpha.ok_or_else(|| {
                    CliError::Usage("--alpha is required in synthetic mode".into())
                })?;
                let seq = synthesize_sequence(a, *max, *seed)?;
                sequence_records(
                    &seq,
                    &Record::new()
                        .with("mode", "synthetic")
                        .with("alpha", a)
                        .with("seed", *seed),
                )
            }
        },
        Command::Measure { lambda, tol } => {
            let mu = spectral_measure(*lambda, *tol)?;
            mu.atoms()
                .iter()
                .map(|a| {
                    Record::new()
                        .with("lambda", *lambda)
                        .with("n", a.n)
                        .with("points", a.points)
                        .with("mass", a.mass)
                        .with("tail_mass_bound", mu.tail_mass_bound())
                })
                .collect()
        }
        Command::Moments { lambda, q, tol } => {
            let mu = spectral_measure(*lambda, *tol)?;
            sweep(&sorted_grid(q)?, |q| {
                let m = moment_sum(&mu, q)?;
                let z = moment_via_zeta(*lambda, q, 1e-12)?;
                Ok(Record::new()
                    .with("lambda", *lambda)
                    .with("q", q)
                    .with("moment", m.value)
                    .with("moment_error", m.error)
                    .with("moment_via_zeta", z.value)
                    .with("moment_via_zeta_error", z.error)
                    .with("tail_mass_bound", mu.tail_mass_bound()))
            })?
        }
        Command::Entropy { lambda, q, tol } => {
            let mu = spectral_measure(*lambda, *tol)?;
            let h1 = shannon_entropy(&mu);
            sweep(&sorted_grid(q)?, |q| {
                Ok(Record::new()
                    .with("lambda", *lambda)
                    .with("q", q)
                    .with("renyi_entropy", renyi_entropy(&mu, q)?)
                    .with("shannon_entropy", h1)
                    .with("tail_mass_bound", mu.tail_mass_bound()))
            })?
        }
        Command::Dq {
            alpha,
            q,
            window,
            seed,
            normalization,
        } => {
            let seq = synthesize_sequence(*alpha, window.hi, *seed)?;
            let norm = Normalization::from(*normalization);
            let name = normalization
                .to_possible_value()
                .map(|v| v.get_name().to_owned())
                .unwrap_or_default();
            dq_estimates(&seq, &sorted_grid(q)?, window.lo, window.hi, norm)?
                .into_iter()
                .map(|e| {
                    Record::new()
                        .with("alpha", *alpha)
                        .with("seed", *seed)
                        .with("window_lo", window.lo)
                        .with("window_hi", window.hi)
                        .with("normalization", name.as_str())
                        .with("q", e.q)
                        .with("h_q", e.h_q)
                        .with("log_n", e.log_n)
                        .with("d_q", e.d_q)
                })
                .collect()
        }
        Command::DqTheory { alpha, q } => sweep(&sorted_grid(q)?, |q| {
            Ok(Record::new()
                .with("alpha", *alpha)
                .with("q", q)
                .with("d_q", theoretical_dq(*alpha, q)?))
        })?,
        Command::Epstein { a, s, tol } => {
            if s.len() > 2 {
                return Err(CliError::Usage(format!(
                    "--s takes RE or RE,IM, got {} values",
                    s.len()
                )));
            }
            let s = Complex64::new(s[0], s.get(1).copied().unwrap_or(0.0));
            let z = epstein_zeta(&form(*a)?, s, *tol)?;
            vec![Record::new()
                .with("a", *a)
                .with("s_re", s.re)
                .with("s_im", s.im)
                .with("value_re", z.value.re)
                .with("value_im", z.value.im)
                .with("tail_bound", z.tail_bound)
                .with("terms_used", z.terms_used)]
        }
        Command::Funceq { a, s_grid } => {
            let q = form(*a)?;
            sweep(&sorted_grid(s_grid)?, |s| {
                let left = epstein_zeta(&q, Complex64::new(1.0 - s, 0.0), 1e-14)?;
                let right = epstein_zeta(&q, Complex64::new(s, 0.0), 1e-14)?;
                let phi = phi_q(&q, Complex64::new(s, 0.0))?;
                let rhs = phi * right.value;
                Ok(Record::new()
                    .with("a", *a)
                    .with("s", s)
                    .with("zeta_1_minus_s", left.value.re)
                    .with("phi", phi.re)
                    .with("zeta_s", right.value.re)
                    .with("residual", (left.value - rhs).norm())
                    .with(
                        "tail_bound",
                        left.tail_bound + phi.norm() * right.tail_bound,
                    ))
            })?
        }
        Command::Dstar { a, q } => {
            let f = form(*a)?;
            sweep(&sorted_grid(q)?, |q| {
                Ok(Record::new()
                    .with("a", *a)
                    .with("q", q)
                    .with("d_star", d_star(&f, q)?)
                    .with("d_star_exponent", d_star_exponent(&f, q)?))
            })?
        }
        Command::Symmetry { a, q } => {
            let f = form(*a)?;
            sweep(&sorted_grid(q)?, |q| {
                let c = symmetry_check(&f, q)?;
                Ok(Record::new()
                    .with("a", *a)
                    .with("q", q)
                    .with("lhs", c.lhs)
                    .with("rhs", c.rhs)
                    .with("residual", c.residual))
            })?
        }
        Command::Landau { x_grid } => sweep(&sorted_grid(x_grid)?, |x| {
            Ok(Record::new()
                .with("x", x)
                .with("representable_count", representable_count(x)?)
                .with("landau_ratio", landau_ratio(x)?))
        })?,
    };
    if records.is_empty() {
        return Err(CliError::Domain(seba_core::Error::Empty(
            "the command produced no records".into(),
        )));
    }
    Ok(records)
}

/// Thread count from [`THREADS_VAR`], if set.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{THREADS_VAR}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_VAR} must be an integer >= 1, got {v:?}"
            ))),
        },
    }
}

/// Executes the parsed command and writes its records.
pub fn run(cli: &Cli) -> Result<()> {
    let start = Instant::now();
    let mut records = execute(&cli.command)?;
    if cli.timing {
        let elapsed = start.elapsed().as_secs_f64();
        for r in &mut records {
            r.push("wall_time_s", elapsed);
        }
    }
    match &cli.output {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| {
                std::io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display()))
            })?;
            let mut w = std::io::BufWriter::new(file);
            emit(&records, cli.format, &mut w)?;
            std::io::Write::flush(&mut w)?;
        }
        None => emit(&records, cli.format, std::io::stdout().lock())?,
    }
    Ok(())
}
