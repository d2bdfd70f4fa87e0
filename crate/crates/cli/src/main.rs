mod commands;
mod document;
mod error;
mod json;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Formula, Outcome};
use document::PolytopeDocument;
use error::CliError;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  validation failure (malformed JSON, bad document, polygon required)
  3  precondition failure (the operation does not apply to the input)
  4  no toric deformations (the polygon has no lattice Minkowski decomposition)
  5  formula or catalog mismatch";

/// Versal deformations and T1 of toric Q-Gorenstein singularities.
#[derive(Debug, Parser)]
#[command(name = "toricdef", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full pipeline: Gorenstein data, T1 support, summands, decompositions,
    /// total spaces, polar.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Seed for sampled degrees in infinite regions.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// dim T1(-R) for the given R (default R*).
    T1 {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated coordinates of R in the lattice of the cone.
        #[arg(long = "degree", allow_hyphen_values = true)]
        degrees: Vec<String>,
        #[arg(long, value_enum, default_value_t = FormulaArg::General)]
        formula: FormulaArg,
    },
    /// Lattice Minkowski decompositions of a polygon.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Total space of the deformation attached to one decomposition.
    Deform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Primitive R with <a, R> = 1 on the slice (default R*).
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// Polar polytope, as a polytope document.
    Polar {
        #[arg(long)]
        input: PathBuf,
    },
    /// The five cones over Del Pezzo surfaces with isolated singularity.
    Catalog {
        /// Recompute every stored value.
        #[arg(long)]
        verify: bool,
    },
    /// Reflexive polygons up to unimodular equivalence.
    Reflexive {
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long)]
        primitive_only: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaArg {
    General,
    Codim2,
    Face,
    All,
}

impl From<FormulaArg> for Formula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::General => Formula::General,
            FormulaArg::Codim2 => Formula::Codim2,
            FormulaArg::Face => Formula::Face,
            FormulaArg::All => Formula::All,
        }
    }
}

fn read_document(path: &PathBuf) -> Result<PolytopeDocument, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    PolytopeDocument::parse(&text)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze { input, seed } => commands::analyze(&read_document(input)?, *seed),
        Command::T1 {
            input,
            degrees,
            formula,
        } => commands::t1(&read_document(input)?, degrees, (*formula).into()),
        Command::Decompose { input } => commands::decompose(&read_document(input)?),
        Command::Deform { input, index, degree } => commands::deform(&read_document(input)?, *index, degree.as_deref()),
        Command::Polar { input } => commands::polar(&read_document(input)?),
        Command::Catalog { verify } => commands::catalog(*verify),
        Command::Reflexive { bound, primitive_only } => commands::reflexive(*bound, *primitive_only),
    }
}

fn emit(cli: &Cli, report: &serde_json::Value) -> Result<(), CliError> {
    let text = json::to_text(report);
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let error = match run(&cli) {
        Ok(outcome) => emit(&cli, &outcome.report).err().or(outcome.error),
        Err(e) => Some(e),
    };
    match error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("toricdef: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
