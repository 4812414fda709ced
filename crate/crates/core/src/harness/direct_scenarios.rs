//! Closed-form solver comparisons: the loading-optimizer study and
//! user-defined custom scenarios.

use num_complex::Complex64;

use super::config::{ScenarioConfig, ScenarioKind};
use super::{aggregate_db, trial_seed, CurvePoint, HarnessError, Runner, Series};
use crate::alpha::LoadingOptimizer;
use crate::covariance::sample_covariance;
use crate::direct::optimal_weights;
use crate::error::Result;
use crate::linalg::{CholeskyFactor, HermitianMatrix};
use crate::metrics::sinr_linear;
use crate::signal::{spatial_steering, temporal_steering, ClutterModel, Domain, TargetSpec, TrainingSet};

/// Everything fixed at one `(N, M, SIR)` point of a closed-form comparison.
#[derive(Debug, Clone)]
pub struct DirectPoint {
    pub n: usize,
    pub m: usize,
    pub m_index: usize,
    pub sir_db: f64,
    pub model: ClutterModel,
    /// Interference-plus-noise covariance used for every SINR evaluation.
    pub r_true: HermitianMatrix,
    /// Look direction with `‖s‖² = N`.
    pub steering: Vec<Complex64>,
    /// Steering vector scaled by the signal amplitude.
    pub signal: Vec<Complex64>,
    pub target: Option<TargetSpec>,
    pub series: Vec<Series>,
    optimal_sinr: f64,
}

impl DirectPoint {
    pub fn new(cfg: &ScenarioConfig, n: usize, m_index: usize, sir_db: f64) -> Result<Self> {
        let m = ScenarioConfig::training_size(n, cfg.m_ratios[m_index]);
        let model = cfg.interference_model(n, sir_db);
        let r_true = model.total_covariance();
        let steering = match model.domain {
            Domain::Temporal => temporal_steering(n, cfg.target_doppler_hz, cfg.prf),
            Domain::Spatial => spatial_steering(n, cfg.target_angle_deg),
        };
        let amp = cfg.signal_power().sqrt();
        let signal: Vec<Complex64> = steering.iter().map(|z| z * amp).collect();
        let target = cfg.contaminate.then(|| TargetSpec {
            steering: steering.clone(),
            power: cfg.signal_power(),
            amplitude_law: cfg.target_law,
        });
        let mut series = vec![Series::Optimal];
        if cfg.kind == ScenarioKind::Custom && m > n {
            series.push(Series::Smi);
        }
        series.extend([Series::RsmiFixed, Series::RsmiOpt]);
        let optimal_sinr = sinr_linear(optimal_weights(&r_true, &signal)?, &signal, &r_true)?;
        Ok(Self { n, m, m_index, sir_db, model, r_true, steering, signal, target, series, optimal_sinr })
    }

    pub fn training(&self, cfg: &ScenarioConfig, trial: usize) -> Result<TrainingSet> {
        let seed = trial_seed(cfg.base_seed, cfg.kind.id(), self.n, self.m_index, trial);
        crate::signal::generate_training_set(&self.model, self.m, self.target.as_ref(), seed)
    }

    /// Linear output SINR of every series for one trial, in `self.series` order.
    pub fn trial(&self, cfg: &ScenarioConfig, trial: usize) -> Result<Vec<f64>> {
        let x = self.training(cfg, trial)?;
        let est = sample_covariance(&x);
        let sigma2 = self.model.noise_power;
        let mut out = Vec::with_capacity(self.series.len());
        for s in &self.series {
            let sinr = match s {
                Series::Optimal => self.optimal_sinr,
                Series::Smi => {
                    let w = CholeskyFactor::new(est.matrix())?.solve(&self.steering)?;
                    sinr_linear(&w, &self.signal, &self.r_true)?
                }
                Series::RsmiFixed => {
                    let loaded = est.matrix().add_diagonal(cfg.baseline_loading_multiplier * sigma2);
                    let w = CholeskyFactor::new(&loaded)?.solve(&self.steering)?;
                    sinr_linear(&w, &self.signal, &self.r_true)?
                }
                Series::RsmiOpt => {
                    let opt = LoadingOptimizer { iterations: cfg.iterations, alpha0_multiplier: cfg.alpha0_multiplier };
                    let sol = opt.optimize(&est, &self.steering, sigma2)?;
                    sinr_linear(&sol.weights, &self.signal, &self.r_true)?
                }
                other => unreachable!("{other} is not a closed-form series"),
            };
            out.push(sinr);
        }
        Ok(out)
    }
}

fn run_direct(cfg: &ScenarioConfig, runner: &Runner) -> std::result::Result<Vec<CurvePoint>, HarnessError> {
    cfg.validate()?;
    let mut points = Vec::new();
    for &sir in &cfg.sir_db_values {
        for &n in &cfg.n_values {
            for m_index in 0..cfg.m_ratios.len() {
                let point = DirectPoint::new(cfg, n, m_index, sir)?;
                let rows = runner.map_trials(0..cfg.trials, |t| point.trial(cfg, t))?;
                for (series, db) in point.series.iter().zip(aggregate_db(&rows)) {
                    points.push(CurvePoint { series: *series, n, m: point.m, sir_db: sir, sinr_out_db: db, trials: cfg.trials });
                }
            }
        }
    }
    Ok(points)
}

/// Optimal, fixed-loading and optimized-loading SMI on two-mode Gaussian
/// clutter, swept over `N`, `M/N` and input SIR.
pub fn run_reg_aut(cfg: &ScenarioConfig, runner: &Runner) -> std::result::Result<Vec<CurvePoint>, HarnessError> {
    if cfg.kind != ScenarioKind::RegAut {
        return Err(super::ConfigError::field("kind", "expected REG_AUT").into());
    }
    run_direct(cfg, runner)
}

/// Closed-form solver comparison on a user-defined interference model.
pub fn run_custom(cfg: &ScenarioConfig, runner: &Runner) -> std::result::Result<Vec<CurvePoint>, HarnessError> {
    if cfg.kind != ScenarioKind::Custom {
        return Err(super::ConfigError::field("kind", "expected CUSTOM").into());
    }
    run_direct(cfg, runner)
}
