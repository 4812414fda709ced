//! `mti`: runs the Monte-Carlo scenarios and writes CSV (and optionally SVG)
//! results.
//!
//! Exit status is 0 on success, 1 on I/O failures, 2 on configuration
//! errors and 3 on numerical failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mti_core::harness::{self, HarnessError, Runner, ScenarioConfig, ScenarioKind};

#[derive(Parser)]
#[command(name = "mti", version, about = "Adaptive MTI weight-computation scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario with its default parameters.
    Scenario(ScenarioArgs),
    /// Run the scenario described by a TOML configuration file.
    RunConfig {
        file: PathBuf,
        /// Overrides `out_dir` from the file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    RegAut,
    QuadLearn,
    QuadPattern,
    Custom,
}

impl From<Kind> for ScenarioKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::RegAut => ScenarioKind::RegAut,
            Kind::QuadLearn => ScenarioKind::QuadLearn,
            Kind::QuadPattern => ScenarioKind::QuadPattern,
            Kind::Custom => ScenarioKind::Custom,
        }
    }
}

#[derive(clap::Args)]
struct ScenarioArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Monte-Carlo trials per point.
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed for the per-trial generators.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Use 16σ² fixed loading and a 1.6σ² starting value for the optimizer.
    #[arg(long)]
    listing_compat: bool,
    /// Also write SVG charts.
    #[arg(long)]
    plot: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Keep the target out of the training data.
    #[arg(long)]
    no_contamination: bool,
    /// Array or pulse-train sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Input SIR values in dB, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    sir: Option<Vec<f64>>,
}

fn run_scenario(args: ScenarioArgs) -> Result<Vec<PathBuf>, HarnessError> {
    let mut cfg = ScenarioConfig::defaults(args.kind.into());
    if args.listing_compat {
        cfg.apply_listing_compat();
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.base_seed = s;
    }
    if args.no_contamination {
        cfg.contaminate = false;
    }
    if let Some(n) = args.n {
        cfg.n_values = n;
    }
    if let Some(sir) = args.sir {
        cfg.sir_db_values = sir;
    }
    if args.workers == Some(0) {
        return Err(harness::ConfigError::field("workers", "must be at least 1").into());
    }
    cfg.validate()?;
    let result = harness::run_scenario(&cfg, &Runner::new(args.workers))?;
    harness::write_outputs(&cfg, &result, &args.out, args.plot)
}

fn run_config(file: PathBuf, out: Option<PathBuf>) -> Result<Vec<PathBuf>, HarnessError> {
    let text = std::fs::read_to_string(&file).map_err(|e| HarnessError::Io { path: file.clone(), source: e })?;
    let (cfg, settings) = harness::parse_config(&text)?;
    let result = harness::run_scenario(&cfg, &Runner::new(settings.workers))?;
    let dir = out.or(settings.out_dir.map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("out"));
    harness::write_outputs(&cfg, &result, &dir, settings.plot)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Scenario(args) => run_scenario(args),
        Command::RunConfig { file, out } => run_config(file, out),
    };
    match outcome {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mti: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
