//! `sipt`: analyze, sweep and generate bipartite states.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input.

mod args;
mod render;
mod sweep;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sipt_core::matfile::{read_density, write_density};
use sipt_core::{analyze, make_state, AnalyzeOptions, DensityMatrix, Tolerances};

use args::{FamilyArgs, Format, OracleArgs, StateArgs, ToleranceArgs};
use sweep::{Column, Param, SweepPlan};

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<sipt_core::Error> for CliError {
    fn from(e: sipt_core::Error) -> Self {
        if e.is_invalid_input() {
            CliError::Invalid(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "sipt", version, about = "Discord and entanglement diagnostics from partial transposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report criteria, bounds and optional oracle values for one state.
    Analyze {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        tol: ToleranceArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate quantities over a range of one family parameter.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// Parameter to vary.
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        step: f64,
        /// Comma-separated output columns.
        #[arg(long, value_enum, value_delimiter = ',')]
        columns: Vec<Column>,
        #[arg(long)]
        restarts: Option<usize>,
        #[command(flatten)]
        tol: ToleranceArgs,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a family state as a matrix file.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => CliError::Invalid(format!("{}: file not found", path.display())),
        _ => CliError::Invalid(format!("{}: {e}", path.display())),
    })
}

fn load_state(state: &StateArgs, tol: &Tolerances) -> Result<(DensityMatrix, String), CliError> {
    match &state.file {
        Some(path) => {
            let text = read_input(path)?;
            let rho = read_density(&text, tol)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            Ok((rho, path.display().to_string()))
        }
        None => {
            let spec = state.family.spec()?;
            Ok((make_state(&spec)?, spec.label()))
        }
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            state,
            oracle,
            tol,
            format,
        } => {
            let tolerances = tol.tolerances()?;
            let (rho, id) = load_state(&state, &tolerances)?;
            let opts = AnalyzeOptions {
                tolerances,
                moment_limit: tol.moment_limit(),
                oracles: oracle.kinds(),
                oracle_options: oracle.options(state.family.seed),
            };
            let report = analyze(&rho, &id, &opts)?;
            let text = match format {
                Format::Text => render::text(&report),
                Format::Json => {
                    let mut s =
                        serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
                    s.push('\n');
                    s
                }
            };
            emit(None, text.as_bytes())
        }
        Command::Sweep {
            family,
            param,
            from,
            to,
            step,
            columns,
            restarts,
            tol,
            out,
        } => {
            let oracle = OracleArgs {
                oracles: Vec::new(),
                restarts,
            }
            .options(family.seed);
            let plan = SweepPlan {
                base: &family,
                param,
                values: sweep::grid(from, to, step)?,
                columns: if columns.is_empty() {
                    sweep::DEFAULT_COLUMNS.to_vec()
                } else {
                    columns
                },
                tolerances: tol.tolerances()?,
                oracle,
            };
            let mut buffer = Vec::new();
            sweep::run(&plan, &mut buffer)?;
            emit(out.as_deref(), &buffer)
        }
        Command::Generate { family, out } => {
            let rho = make_state(&family.spec()?)?;
            emit(out.as_deref(), write_density(&rho).as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sipt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
