//! Monte-Carlo experiment harness.
//!
//! Every trial draws its data from a seed derived from
//! `(base_seed, scenario, N, sweep, trial)`. Trials run on a worker pool
//! and their linear results are reduced in trial order, so outputs do not
//! depend on the number of workers or on scheduling.

mod config;
mod direct_scenarios;
mod output;
mod plot;
mod quad;
mod seed;

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{parse_config, ConfigError, ConstraintGain, NamedGain, RunSettings, ScenarioConfig, ScenarioKind};
pub use direct_scenarios::{run_custom, run_reg_aut, DirectPoint};
pub use output::{emit_csv, emit_plot, write_outputs, XAxis, CSV_HEADER};
pub use plot::{svg_line_chart, PlotSeries};
pub use quad::{run_quad_learn, run_quad_pattern, DirectionGain, PatternResult, QuadPoint};
pub use seed::{splitmix64, trial_seed};

use crate::direct::AlgorithmTag;
use crate::error::MtiError;

/// Failures of a harness run, each with its process exit status.
#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numeric(#[from] MtiError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Numeric(_) => 3,
            Self::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }
}

/// One plotted curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    Optimal,
    Smi,
    RsmiFixed,
    RsmiOpt,
    QuadLms,
    FrostLms,
    Lms,
}

impl Series {
    pub fn label(self) -> &'static str {
        match self {
            Self::Optimal => "OPTIMAL",
            Self::Smi => "SMI",
            Self::RsmiFixed => "RSMI_FIXED",
            Self::RsmiOpt => "RSMI_OPT",
            Self::QuadLms => "QUAD_LMS",
            Self::FrostLms => "FROST_LMS",
            Self::Lms => "LMS",
        }
    }

    /// Algorithm that produces the weights of this curve.
    pub fn tag(self) -> AlgorithmTag {
        match self {
            Self::Optimal => AlgorithmTag::Optimal,
            Self::Smi => AlgorithmTag::Smi,
            Self::RsmiFixed | Self::RsmiOpt => AlgorithmTag::Rsmi,
            Self::QuadLms => AlgorithmTag::QuadLms,
            Self::FrostLms => AlgorithmTag::FrostLms,
            Self::Lms => AlgorithmTag::Lms,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Mean output SINR of one algorithm at one `(N, M, SIR)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub series: Series,
    pub n: usize,
    pub m: usize,
    pub sir_db: f64,
    pub sinr_out_db: f64,
    pub trials: usize,
}

/// Outcome of a scenario run.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioResult {
    Curves(Vec<CurvePoint>),
    Patterns(PatternResult),
}

/// Worker pool for trials.
pub struct Runner {
    pool: rayon::ThreadPool,
}

impl Runner {
    /// `workers = None` uses all available cores.
    pub fn new(workers: Option<usize>) -> Self {
        let threads = workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        Self { pool }
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Evaluates `f` for each trial index; results come back in index order.
    pub fn map_trials<T, F>(&self, trials: std::ops::Range<usize>, f: F) -> Result<Vec<T>, MtiError>
    where
        T: Send,
        F: Fn(usize) -> Result<T, MtiError> + Sync + Send,
    {
        self.pool.install(|| trials.into_par_iter().map(&f).collect())
    }
}

/// Mean of each column over per-trial rows, summing in row order.
pub fn mean_columns(rows: &[Vec<f64>]) -> Vec<f64> {
    let width = rows.first().map_or(0, Vec::len);
    let mut acc = vec![0.0; width];
    for row in rows {
        for (a, v) in acc.iter_mut().zip(row) {
            *a += v;
        }
    }
    acc.iter().map(|a| a / rows.len() as f64).collect()
}

/// [`mean_columns`] in dB.
pub fn aggregate_db(rows: &[Vec<f64>]) -> Vec<f64> {
    mean_columns(rows).into_iter().map(|a| 10.0 * a.log10()).collect()
}

/// Runs a validated scenario.
pub fn run_scenario(cfg: &ScenarioConfig, runner: &Runner) -> Result<ScenarioResult, HarnessError> {
    cfg.validate()?;
    Ok(match cfg.kind {
        ScenarioKind::RegAut => ScenarioResult::Curves(run_reg_aut(cfg, runner)?),
        ScenarioKind::Custom => ScenarioResult::Curves(run_custom(cfg, runner)?),
        ScenarioKind::QuadLearn => ScenarioResult::Curves(run_quad_learn(cfg, runner)?),
        ScenarioKind::QuadPattern => ScenarioResult::Patterns(run_quad_pattern(cfg, runner)?),
    })
}

/// Parses a configuration file, runs it and writes the outputs.
///
/// Returns the written files. Relative `out_dir` values resolve against the
/// current directory; the default is `out`.
pub fn run_config(path: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let (cfg, settings) = parse_config(&text)?;
    let runner = Runner::new(settings.workers);
    let result = run_scenario(&cfg, &runner)?;
    let out_dir = PathBuf::from(settings.out_dir.as_deref().unwrap_or("out"));
    write_outputs(&cfg, &result, &out_dir, settings.plot)
}
