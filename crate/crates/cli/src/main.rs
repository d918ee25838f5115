//! `hyperspec` command-line front end.
//!
//! Exit codes: 0 ok, 2 input error, 3 non-convergence, 4 failed check,
//! 5 capacity.

mod commands;
mod error;
mod input;
mod output;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperspec::spectral::{SolverConfig, SpectralKind};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "hyperspec",
    version,
    about = "Spectral radii and degree bounds of uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral radius of the adjacency or signless Laplacian tensor.
    Spectrum(SpectrumArgs),
    /// Degree-based lower bounds scored against the computed radii.
    Bound(BoundArgs),
    /// Build the r-fold blow-up; `--verify` checks the product identities.
    Blowup(BlowupArgs),
    /// Print a generated hypergraph in the text format.
    Generate(GenerateArgs),
    /// Run the property suite over a corpus or the built-in families.
    VerifySuite(SuiteArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Hypergraph file (text format, or JSON when the name ends in .json).
    #[arg(long = "in", value_name = "PATH")]
    pub path: Option<PathBuf>,
    /// Generator spec such as `complete:5,3`, `single_edge:3`,
    /// `loose_path:3,2` or `random:n,r,m,seed`.
    #[arg(long = "gen", value_name = "SPEC")]
    pub spec: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long = "tol", default_value_t = 1e-10, value_name = "X")]
    pub tolerance: f64,
    #[arg(long = "max-iter", default_value_t = 100_000, value_name = "N")]
    pub max_iterations: usize,
    /// Diagonal shift; defaults to 1 for adjacency and 0 for Q.
    #[arg(long, value_name = "X")]
    pub shift: Option<f64>,
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub seed: u64,
    /// Random restarts after a non-converged run.
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub restarts: usize,
}

impl SolverArgs {
    pub fn config(&self) -> Result<SolverConfig, CliError> {
        let cfg = SolverConfig {
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
            shift: self.shift,
            seed: self.seed,
            restarts: self.restarts,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub json: bool,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Include wall time in the JSON report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "adjacency", value_parser = parse_kind, value_name = "adjacency|q")]
    pub kind: SpectralKind,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct BlowupArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Check the product, scaling, signless and certificate identities.
    #[arg(long)]
    pub verify: bool,
    /// Write the blow-up hypergraph here in the text format.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Vertex map destination; defaults to `<out>.map.json`.
    #[arg(long, value_name = "PATH", requires = "out")]
    pub map: Option<PathBuf>,
    #[arg(long, default_value_t = 20_000, value_name = "N")]
    pub cap_vertices: usize,
    #[arg(long, default_value_t = 5_000_000, value_name = "N")]
    pub cap_edges: usize,
    /// Random vectors per apply-equivalence check.
    #[arg(long, default_value_t = 50, value_name = "N")]
    pub trials: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long = "gen", value_name = "SPEC")]
    pub spec: String,
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Directory of `.hg`/`.json` hypergraphs and recorded `bound --json`
    /// reports; the built-in family list is used when absent.
    #[arg(long, value_name = "DIR")]
    pub corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 20, value_name = "N")]
    pub trials: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_kind(s: &str) -> Result<SpectralKind, String> {
    s.parse().map_err(|e: hyperspec::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Bound(a) => commands::bound(&a),
        Command::Blowup(a) => commands::blowup(&a),
        Command::Generate(a) => commands::generate(&a),
        Command::VerifySuite(a) => suite::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
