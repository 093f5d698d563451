//! `gausschain` command line: evolves open harmonic chains, sweeps pairwise
//! entanglement over the interaction time, exports propagator circuits, and
//! runs validation suites.
//!
//! Exit codes: 0 success, 1 usage/configuration error, 2 validation
//! failure, 3 I/O error.

mod commands;
mod config;
mod emit;

use clap::{Parser, Subcommand};
use std::fmt;

use config::{Command, Format, RunConfig};
use gausschain::Engine;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Validation(m) => write!(f, "validation failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gausschain",
    about = "Gaussian-state simulator for open harmonic chains",
    version
)]
struct Cli {
    /// Path to the run configuration file.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Output path (default: stdout); overrides output.path.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Output format; overrides output.format.
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Propagator engine; overrides engine.
    #[arg(long, global = true, value_parser = ["decomposition", "oracle", "both"])]
    engine: Option<String>,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Clone, Copy)]
enum CliCommand {
    /// Propagate the initial state to one time; emit the covariance matrix.
    Simulate,
    /// Emit the propagator's gate sequence in the circuit text format.
    Decompose,
    /// Vacuum-input entanglement sweep over the interaction time.
    Sweep,
    /// Sweep with the end oscillators pre-squeezed (requires sweep.r).
    Tag,
    /// Run the property suites for the configured chain.
    Validate,
}

impl CliCommand {
    fn as_config_command(self) -> Command {
        match self {
            CliCommand::Simulate => Command::Simulate,
            CliCommand::Decompose => Command::Decompose,
            CliCommand::Sweep => Command::Sweep,
            CliCommand::Tag => Command::Tag,
            CliCommand::Validate => Command::Validate,
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {path}: {e}")))?;
    let mut run = config::parse_config(&text)?;

    let command = cli.command.as_config_command();
    if let Some(configured) = run.command {
        if configured != command {
            return Err(CliError::Config(format!(
                "config sets command = {} but the subcommand is {}",
                configured.name(),
                command.name()
            )));
        }
    }
    run.command = Some(command);

    if let Some(out) = &cli.out {
        run.out = Some(out.clone());
    }
    if let Some(format) = &cli.format {
        run.format = match format.as_str() {
            "csv" => Format::Csv,
            _ => Format::Json,
        };
    }
    if let Some(engine) = &cli.engine {
        run.engine = match engine.as_str() {
            "decomposition" => Engine::Decomposition,
            "oracle" => Engine::Oracle,
            _ => Engine::Both,
        };
    }
    Ok(run)
}

/// Honors `GAUSSCHAIN_THREADS` as a cap on sweep parallelism (0 = auto).
fn dispatch(run: &RunConfig, command: CliCommand) -> Result<(), CliError> {
    let threads = match std::env::var("GAUSSCHAIN_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Config(format!("GAUSSCHAIN_THREADS must be an integer, got '{v}'"))
        })?,
        Err(_) => 0,
    };
    let body = || match command {
        CliCommand::Simulate => commands::cmd_simulate(run),
        CliCommand::Decompose => commands::cmd_decompose(run),
        CliCommand::Sweep => commands::cmd_sweep(run),
        CliCommand::Tag => commands::cmd_tag(run),
        CliCommand::Validate => commands::cmd_validate(run),
    };
    if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
        pool.install(body)
    } else {
        body()
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendered help/usage but normalize the exit code.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            std::process::exit(if is_help { 0 } else { 1 });
        }
    };

    let result = load_config(&cli).and_then(|run| dispatch(&run, cli.command));
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
