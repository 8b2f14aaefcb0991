//! `hypmid`: hyperbolic midpoints by ruler and compass, from the shell.
//!
//! Exit codes: 0 success, 1 error (or failed checks), 2 construction
//! inapplicable, 64 usage.

mod midpoint;
mod render;
mod script;
mod svg;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypmid::verify::Suite;
use hypmid::{Error, MethodChoice, Model, Point2, Tolerance};

/// Environment variable that replaces the default incidence tolerance.
pub const TOL_ENV: &str = "HYPMID_TOL";

#[derive(Parser)]
#[command(name = "hypmid", version, about = "Hyperbolic midpoint constructions in H² and B²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the hyperbolic midpoint of two points.
    Midpoint(MidpointArgs),
    /// Run seeded sweeps over every identity and report the largest residuals.
    Verify(VerifyArgs),
    /// Run or format `.hgc` construction scripts.
    #[command(subcommand)]
    Script(ScriptCommand),
    /// Draw a construction as an SVG figure.
    Render(RenderArgs),
}

#[derive(Args)]
pub struct PairArgs {
    /// Model: h2 (upper half-plane) or b2 (unit disk).
    #[arg(long, value_parser = parse_model)]
    pub model: Option<Model>,
    /// First point, as `A,B`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub x: Option<Point2>,
    /// Second point, as `C,D`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub y: Option<Point2>,
    /// auto, case1, I, II, III, IV, V, VI, equal-moduli or angles.
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    pub method: MethodChoice,
}

#[derive(Args)]
pub struct MidpointArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Print JSON (the default).
    #[arg(long, conflicts_with = "plain")]
    pub json: bool,
    /// Print one `key value` line per field.
    #[arg(long)]
    pub plain: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    H2,
    B2,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::H2 => Suite::H2,
            SuiteArg::B2 => Suite::B2,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    /// Random pairs per claim.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Incidence tolerance; defaults to $HYPMID_TOL, then 1e-9.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand)]
pub enum ScriptCommand {
    /// Evaluate a script and check its assertions.
    Run {
        file: PathBuf,
        /// Replace a point binding or supply an input, as `name=x,y`.
        #[arg(long = "bind", value_parser = parse_binding, allow_hyphen_values = true)]
        bind: Vec<(String, Point2)>,
    },
    /// Print a script in canonical form.
    Fmt {
        file: PathBuf,
        /// Rewrite the file in place.
        #[arg(long, conflicts_with = "check")]
        write: bool,
        /// Exit 1 if the file is not in canonical form.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Render a script instead of a single construction.
    #[arg(long, conflicts_with_all = ["model", "x", "y"])]
    pub script: Option<PathBuf>,
    #[arg(long = "bind", value_parser = parse_binding, allow_hyphen_values = true, requires = "script")]
    pub bind: Vec<(String, Point2)>,
    /// Output file; `-` writes to stdout.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(1..))]
    pub width: u32,
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(1..))]
    pub height: u32,
    /// Omit object labels.
    #[arg(long)]
    pub no_labels: bool,
}

/// How a command failed, which decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Inapplicable(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Inapplicable(_) => 2,
            Failure::Usage(_) => 64,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::MethodInapplicable { .. } => Failure::Inapplicable(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

pub type CmdResult = Result<ExitCode, Failure>;

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<MethodChoice, String> {
    s.parse()
}

fn parse_point(s: &str) -> Result<Point2, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `A,B`, got `{s}`"))?;
    let num = |t: &str| match t.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{t}` is not a finite number")),
    };
    Ok(Point2::new(num(a)?, num(b)?))
}

fn parse_binding(s: &str) -> Result<(String, Point2), String> {
    let (name, p) = s.split_once('=').ok_or_else(|| format!("expected `name=x,y`, got `{s}`"))?;
    Ok((name.trim().to_string(), parse_point(p)?))
}

/// `--tol`, else `$HYPMID_TOL`, else the default.
pub fn tolerance(flag: Option<f64>) -> Result<Tolerance, Failure> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("{TOL_ENV}: `{s}` is not a number")))?,
            Err(_) => return Ok(Tolerance::default()),
        },
    };
    let tol = Tolerance::with_incidence(value);
    if !(value.is_finite() && tol.is_valid()) {
        return Err(Failure::Usage(format!("tolerance must be a positive number, got {value}")));
    }
    Ok(tol)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(64) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Midpoint(args) => midpoint::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Script(cmd) => script::run(&cmd),
        Command::Render(args) => render::run(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}\n\nFor more information, try '--help'."),
                Failure::Inapplicable(m) | Failure::Other(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
