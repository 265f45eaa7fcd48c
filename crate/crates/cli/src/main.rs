//! Command-line frontend: each subcommand prints a JSON report.
//!
//! Exit status is 0 when every check in the report passes, 1 on a residual
//! failure or a domain error (reported as a JSON error object), and 2 on a
//! usage error.

mod commands;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynpoisson::Tolerances;
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "dynpoisson",
    version,
    about = "Dynamical r-matrices and Poisson structures on flag manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for sampled points.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Residual pass threshold.
    #[arg(long, env = "DYNPOISSON_RESIDUAL_TOL", global = true)]
    pub residual_tol: Option<f64>,
    /// Distance to a pole treated as a pole.
    #[arg(long, env = "DYNPOISSON_POLE_TOL", global = true)]
    pub pole_tol: Option<f64>,
    /// Threshold for identities that hold to rounding.
    #[arg(long, env = "DYNPOISSON_STRICT_TOL", global = true)]
    pub strict_tol: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Compact,
    Pretty,
}

/// Algebra, subsets and parameters shared by most subcommands.
#[derive(Args, Debug, Clone)]
pub struct Setup {
    /// Root system designator such as A2, B3, G2.
    #[arg(long)]
    pub algebra: String,
    /// Simple roots of X, comma separated (a1,a2,...).
    #[arg(long = "X", default_value = "")]
    pub x: String,
    /// Simple roots of X1 ⊆ X, comma separated.
    #[arg(long = "X1", default_value = "")]
    pub x1: String,
    /// Comma-separated parameter values.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub lambda: String,
    /// Coupling constant, e.g. 1, i, 0.5+2i.
    #[arg(long, default_value = "i", allow_hyphen_values = true)]
    pub epsilon: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Root system and basis data.
    Algebra {
        #[arg(long)]
        algebra: String,
    },
    /// Evaluate φ and r(λ); λ gives the pairings with the simple coroots' duals, complex allowed.
    Rmatrix {
        #[command(flatten)]
        setup: Setup,
        /// Weyl twist as a word in simple reflections (a1,a2,...).
        #[arg(long, default_value = "")]
        twist: String,
    },
    /// Verify the dynamical Yang-Baxter equation at λ.
    Cdybe {
        #[command(flatten)]
        setup: Setup,
        #[arg(long, default_value = "")]
        twist: String,
    },
    /// Coefficients of the Poisson structure at the base point and its Jacobi obstruction; λ gives γ(λ₁) for γ in X.
    Poisson {
        #[command(flatten)]
        setup: Setup,
    },
    /// Build and verify the Lagrangian subalgebra.
    Lagrangian {
        #[command(flatten)]
        setup: Setup,
    },
    /// Enumerate symplectic leaves (X1 must be empty).
    Leaves {
        #[command(flatten)]
        setup: Setup,
    },
    /// Distances to the limit structure along λ + t·ρ̌_Y.
    Limits {
        #[command(flatten)]
        setup: Setup,
        /// Simple roots of Y; defaults to all.
        #[arg(long = "Y", default_value = "")]
        y: String,
        /// Comma-separated values of t.
        #[arg(long, default_value = "1,5,10,20")]
        t: String,
    },
    /// Moment maps in the defining representation of su(n) and their Hamiltonian check.
    Moment {
        #[command(flatten)]
        setup: Setup,
        #[arg(long, value_enum, default_value_t = commands::MomentMode::Dressing)]
        kind: commands::MomentMode,
        /// Bruhat cell as a word in simple reflections; defaults to the longest element.
        #[arg(long)]
        w: Option<String>,
        /// Shift t for the limit check.
        #[arg(long, default_value_t = 15.0)]
        t: f64,
        /// Number of sampled points for the Hamiltonian check.
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Modular vector field of the S² family on SU(2)/T.
    Modular {
        #[command(flatten)]
        setup: Setup,
        /// Comma-separated family parameters.
        #[arg(long, default_value = "-1,0,0.3,2", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Run every acceptance criterion.
    Suite,
}

/// Failure modes of a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] dynpoisson::Error),
}

/// Body of a successful report.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
}

#[derive(Serialize)]
struct Report<'a> {
    tool_version: &'static str,
    invocation: Invocation<'a>,
    tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorObject>,
}

#[derive(Serialize)]
struct Invocation<'a> {
    subcommand: &'a str,
    args: &'a [String],
}

#[derive(Serialize)]
struct ErrorObject {
    kind: &'static str,
    message: String,
}

pub fn tolerances(common: &Common) -> std::result::Result<Tolerances, CliError> {
    let mut t = Tolerances::default();
    for (v, slot, name) in [
        (common.residual_tol, &mut t.residual, "residual"),
        (common.pole_tol, &mut t.pole, "pole"),
        (common.strict_tol, &mut t.strict, "strict"),
    ] {
        if let Some(v) = v {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!(
                    "{name} tolerance must be positive, got {v}"
                )));
            }
            *slot = v;
        }
    }
    Ok(t)
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Algebra { .. } => "algebra",
        Command::Rmatrix { .. } => "rmatrix",
        Command::Cdybe { .. } => "cdybe",
        Command::Poisson { .. } => "poisson",
        Command::Lagrangian { .. } => "lagrangian",
        Command::Leaves { .. } => "leaves",
        Command::Limits { .. } => "limits",
        Command::Moment { .. } => "moment",
        Command::Modular { .. } => "modular",
        Command::Suite => "suite",
    }
}

fn emit(report: &Report, common: &Common) -> std::io::Result<()> {
    let mut text = match common.format {
        Format::Compact => serde_json::to_string(report),
        Format::Pretty => serde_json::to_string_pretty(report),
    }
    .map_err(std::io::Error::other)?;
    text.push('\n');
    match &common.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = subcommand_name(&cli.command);
    let tol = match tolerances(&cli.common) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let invocation = Invocation {
        subcommand: name,
        args: &args,
    };
    let (report, code) = match commands::run(&cli.command, &cli.common, &tol) {
        Ok(o) => {
            let code = if o.passed { 0 } else { 1 };
            let r = Report {
                tool_version: env!("CARGO_PKG_VERSION"),
                invocation,
                tolerances: tol,
                passed: Some(o.passed),
                result: Some(o.result),
                error: None,
            };
            (r, code)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Domain(e)) => {
            let error = ErrorObject {
                kind: e.kind(),
                message: e.to_string(),
            };
            let r = Report {
                tool_version: env!("CARGO_PKG_VERSION"),
                invocation,
                tolerances: tol,
                passed: None,
                result: None,
                error: Some(error),
            };
            (r, 1)
        }
    };
    if let Err(e) = emit(&report, &cli.common) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
