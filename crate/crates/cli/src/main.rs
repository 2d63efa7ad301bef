//! `steklov-trees`: spectra of trees, enumeration of matching-number classes
//! and exhaustive checks of the extremal bounds.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use steklov_trees::closed::{Operator, Theorem};
use steklov_trees::enumerate::TreeClassQuery;
use steklov_trees::FamilySpec;

/// Environment variable consulted once at startup for the default tolerance.
pub const TOL_ENV: &str = "STEKLOV_TREES_TOL";
pub const FALLBACK_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "steklov-trees", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Steklov (leaf boundary) and/or Laplacian spectrum of one tree.
    Spectrum(SpectrumArgs),
    /// Non-isomorphic free trees of one order or one matching-number class.
    Enumerate(EnumerateArgs),
    /// Exhaustive check of one bound over a range of classes.
    Verify(VerifyArgs),
    /// Class maximum against the extra special graph for `m = br + 2`.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorChoice {
    Steklov,
    Laplacian,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
struct TreeSource {
    /// Named family, e.g. `star:5`, `crab:1,2,1`, `es:3,1`, `spider:2x3,1x1`.
    #[arg(long, group = "source")]
    family: Option<String>,
    /// Edge-list file: vertex count on the first line, then one `u v` per line.
    #[arg(long, group = "source")]
    tree: Option<PathBuf>,
    /// Uniform random labelled tree on this many vertices (see `--seed`).
    #[arg(long, group = "source")]
    random: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    source: TreeSource,
    #[arg(long, value_enum, default_value_t = OperatorChoice::Steklov)]
    pub operator: OperatorChoice,
    /// Also emit the closed-form Steklov spectrum when the family has one.
    #[arg(long)]
    pub closed_form: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Agreement tolerance for `--closed-form`.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, conflicts_with = "class", required_unless_present = "class")]
    pub n: Option<usize>,
    /// `n=K,m=J` or `b=K,m=J`.
    #[arg(long)]
    pub class: Option<TreeClassQuery>,
    #[arg(long)]
    pub count_only: bool,
    /// One canonical code per line instead of edge-list blocks.
    #[arg(long, conflicts_with = "count_only")]
    pub codes: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// slope, fell, older, ranch or unit.
    #[arg(long)]
    pub theorem: Theorem,
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    #[arg(long, default_value_t = 5)]
    pub max_b: usize,
    #[arg(long, default_value_t = 5)]
    pub max_m: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub b: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// steklov or laplacian.
    #[arg(long, default_value_t = Operator::Steklov)]
    pub operator: Operator,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Where a tree for `spectrum` comes from.
pub enum Source {
    Family(FamilySpec),
    File(PathBuf),
    Random(usize),
}

impl SpectrumArgs {
    pub fn source(&self) -> Result<Source, CliError> {
        let s = &self.source;
        match (&s.family, &s.tree, s.random) {
            (Some(f), _, _) => f
                .parse()
                .map(Source::Family)
                .map_err(|e| CliError::Usage(e.to_string())),
            (_, Some(p), _) => Ok(Source::File(p.clone())),
            (_, _, Some(n)) => Ok(Source::Random(n)),
            _ => Err(CliError::Usage(
                "one of --family, --tree, --random is required".into(),
            )),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// At least one check failed; the report has been written.
    Failed,
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<steklov_trees::Error> for CliError {
    fn from(e: steklov_trees::Error) -> Self {
        use steklov_trees::Error as E;
        match e {
            E::InvalidTree(_)
            | E::InvalidFamily(_)
            | E::Parse(_)
            | E::OutOfRange(_)
            | E::EmptyBoundary
            | E::BoundaryOutOfRange(_) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

fn default_tol() -> Result<f64, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("{TOL_ENV}=`{text}`: {e}"))),
        Err(_) => Ok(FALLBACK_TOL),
    }
}

fn resolve_tol(given: Option<f64>, default: f64) -> Result<f64, CliError> {
    let tol = given.unwrap_or(default);
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

fn run(cli: Cli, env_tol: f64) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(args) => {
            let tol = resolve_tol(args.tol, env_tol)?;
            commands::spectrum(&args, tol)
        }
        Command::Enumerate(args) => commands::enumerate(&args),
        Command::Verify(args) => {
            let tol = resolve_tol(args.tol, env_tol)?;
            commands::verify(&args, tol)
        }
        Command::Conjecture(args) => {
            let tol = resolve_tol(args.tol, env_tol)?;
            commands::conjecture(&args, tol)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = default_tol().and_then(|tol| run(cli, tol));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Internal(msg) => eprintln!("internal error: {msg}"),
                CliError::Failed => eprintln!("verification failed"),
            }
            ExitCode::from(e.code())
        }
    }
}
