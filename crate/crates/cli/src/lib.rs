//! Batch front end for the negativity-spectrum engine.
//!
//! Six subcommands: `spectrum` and `binegativity` dump sector tables,
//! `negativity` emits the PPT-cost bound report, `scan` sweeps a coupling
//! grid, `verify` cross-checks a model against the dense oracle, and `bench`
//! times the naive-versus-fast binegativity paths. Every output is
//! deterministic byte-for-byte for a given configuration, independent of the
//! thread count.

pub mod config;
pub mod error;
pub mod output;
pub mod tasks;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use config::RunConfig;
use error::CliError;
use negspec::LogBase;
use output::Format;
use tasks::TaskOptions;

/// Environment variable consulted for the default thread count; the
/// `--threads` flag wins when both are present.
pub const THREADS_ENV_VAR: &str = "NEGSPEC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "negspec",
    version,
    about = "Negativity and binegativity spectra for thermal stabilizer states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub task: Task,

    /// Path to the JSON run configuration (required except for `bench`).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Base for entanglement quantities: bits ("2") or nats ("e").
    #[arg(long = "log-base", global = true, value_enum, default_value_t = BaseArg::Two)]
    pub log_base: BaseArg,

    /// Worker thread count; overrides the NEGSPEC_THREADS variable.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Sign-verdict epsilon (report tasks) or comparison tolerance (verify).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Task {
    /// Negativity sector table f_t of the configured model.
    Spectrum,
    /// Binegativity sector table of the configured model.
    Binegativity,
    /// Entanglement negativity and PPT-cost bounds of the configured model.
    Negativity,
    /// Bound report at every point of the configured coupling grid.
    Scan,
    /// Compare the engine against the dense oracle (needs N <= 12).
    Verify,
    /// Time the naive versus fast binegativity paths on random tables.
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

impl From<BaseArg> for LogBase {
    fn from(value: BaseArg) -> Self {
        match value {
            BaseArg::Two => LogBase::Two,
            BaseArg::E => LogBase::E,
        }
    }
}

fn init_threads(flag: Option<usize>) -> Result<(), CliError> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV_VAR) {
            Ok(raw) => Some(raw.trim().parse::<usize>().map_err(|_| {
                CliError::Config(format!(
                    "{THREADS_ENV_VAR} must be a positive integer, got {raw:?}"
                ))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Config("thread count must be >= 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot size the thread pool: {e}")))?;
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    init_threads(cli.threads)?;
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => match cli.task {
            // Bench has complete defaults; everything else needs a model.
            Task::Bench => RunConfig::parse("{}")?,
            _ => return Err(CliError::Config("--config is required for this task".into())),
        },
    };
    let opts = TaskOptions {
        format: cli.format,
        log_base: cli.log_base.into(),
        tolerance: cli.tolerance,
    };
    let content = match cli.task {
        Task::Spectrum => tasks::spectrum(&config, &opts)?,
        Task::Binegativity => tasks::binegativity(&config, &opts)?,
        Task::Negativity => tasks::negativity(&config, &opts)?,
        Task::Scan => tasks::scan(&config, &opts)?,
        Task::Verify => tasks::verify(&config, &opts)?,
        Task::Bench => tasks::bench(&config, &opts)?,
    };
    output::emit(&content, cli.out.as_deref())
}
