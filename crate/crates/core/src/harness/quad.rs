//! Adaptive-array scenarios: learning curves of the constrained LMS
//! variants and their averaged beampatterns after training.

use num_complex::Complex64;

use super::config::{ScenarioConfig, ScenarioKind};
use super::{aggregate_db, mean_columns, trial_seed, CurvePoint, HarnessError, Runner, Series};
use crate::adaptive::{FrostState, NlmsState, QuadLmsState};
use crate::error::{MtiError, Result};
use crate::linalg::vector::{axpy, inner, norm, norm_sqr};
use crate::linalg::{CholeskyFactor, ComplexMatrix, HermitianMatrix};
use crate::metrics::{normalized_beampattern, pattern_from_linear, pattern_gain, PatternGrid};
use crate::signal::{spatial_steering, ClutterModel, TargetSpec, TrainingSet};

/// Point-source interference plus white noise, `Σ P_l·e_l·e_lᴴ + σ²·I`.
#[derive(Debug, Clone)]
struct JammerCovariance {
    terms: Vec<(f64, Vec<Complex64>)>,
    noise: f64,
}

impl JammerCovariance {
    fn new(model: &ClutterModel) -> Self {
        let terms = model
            .modes
            .iter()
            .map(|m| (model.interference_power * m.power_fraction, spatial_steering(model.n, m.center)))
            .collect();
        Self { terms, noise: model.noise_power }
    }

    fn quadratic_form(&self, w: &[Complex64]) -> f64 {
        self.terms.iter().map(|(p, e)| p * inner(e, w).norm_sqr()).sum::<f64>() + self.noise * norm_sqr(w)
    }

    fn sinr(&self, w: &[Complex64], signal: &[Complex64]) -> Result<f64> {
        let q = self.quadratic_form(w);
        if !(q > 0.0) {
            return Err(MtiError::NotPositiveDefinite { step: 0, pivot: q });
        }
        Ok(inner(w, signal).norm_sqr() / q)
    }

    /// `R⁻¹·b` through the Woodbury identity.
    fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let k = self.terms.len();
        let small = ComplexMatrix::from_fn(k, k, |i, j| {
            let g = inner(&self.terms[i].1, &self.terms[j].1);
            if i == j {
                g + self.noise / self.terms[i].0
            } else {
                g
            }
        });
        let eb: Vec<Complex64> = self.terms.iter().map(|(_, e)| inner(e, b)).collect();
        let y = CholeskyFactor::new(&HermitianMatrix::new(small)?)?.solve(&eb)?;
        let mut x = b.to_vec();
        for ((_, e), yi) in self.terms.iter().zip(&y) {
            axpy(-*yi, e, &mut x);
        }
        Ok(x.into_iter().map(|z| z / self.noise).collect())
    }
}

/// Everything fixed at one `(N, SIR)` point of the adaptive-array scenarios.
#[derive(Debug, Clone)]
pub struct QuadPoint {
    pub n: usize,
    pub sir_db: f64,
    pub model: ClutterModel,
    /// Look direction with `‖s‖² = N`.
    pub steering: Vec<Complex64>,
    /// Steering vector scaled by the signal amplitude.
    pub signal: Vec<Complex64>,
    pub target: Option<TargetSpec>,
    /// Training length: the last checkpoint.
    pub m: usize,
    cov: JammerCovariance,
    optimal_sinr: f64,
}

impl QuadPoint {
    pub fn new(cfg: &ScenarioConfig, n: usize, sir_db: f64) -> Result<Self> {
        let model = cfg.interference_model(n, sir_db);
        let steering = spatial_steering(n, cfg.target_angle_deg);
        let amp = cfg.signal_power().sqrt();
        let signal: Vec<Complex64> = steering.iter().map(|z| z * amp).collect();
        let target = cfg.contaminate.then(|| TargetSpec {
            steering: steering.clone(),
            power: cfg.signal_power(),
            amplitude_law: cfg.target_law,
        });
        let cov = JammerCovariance::new(&model);
        let optimal_sinr = cov.sinr(&cov.solve(&signal)?, &signal)?;
        let m = *cfg.m_values.last().expect("validated non-empty");
        Ok(Self { n, sir_db, model, steering, signal, target, m, cov, optimal_sinr })
    }

    /// Dense interference-plus-noise covariance.
    pub fn r_true(&self) -> HermitianMatrix {
        self.model.total_covariance()
    }

    /// Output SINR (linear) of `w` against the true covariance.
    pub fn sinr(&self, w: &[Complex64]) -> Result<f64> {
        self.cov.sinr(w, &self.signal)
    }

    pub fn optimal_sinr(&self) -> f64 {
        self.optimal_sinr
    }

    pub fn training(&self, cfg: &ScenarioConfig, trial: usize) -> Result<TrainingSet> {
        let seed = trial_seed(cfg.base_seed, cfg.kind.id(), self.n, 0, trial);
        crate::signal::generate_training_set(&self.model, self.m, self.target.as_ref(), seed)
    }

    pub fn quad_state(&self, cfg: &ScenarioConfig) -> Result<QuadLmsState> {
        Ok(QuadLmsState::new(&self.steering, cfg.mu0, cfg.initial_weights)?
            .with_normalize(cfg.quad_normalize)
            .with_constraint_gain(cfg.quad_constraint_gain.value(self.n)))
    }

    pub fn frost_state(&self, cfg: &ScenarioConfig) -> Result<FrostState> {
        FrostState::new(&self.steering, cfg.mu0)?.with_initial(cfg.initial_weights.weights(&self.steering)?)
    }

    /// Linear SINR per checkpoint for OPTIMAL, RSMI_FIXED, QUAD_LMS and
    /// FROST_LMS, checkpoint-major. Adaptive states carry over between
    /// checkpoints.
    pub fn learning_trial(&self, cfg: &ScenarioConfig, trial: usize) -> Result<Vec<f64>> {
        let x = self.training(cfg, trial)?;
        let mut quad = self.quad_state(cfg)?;
        let mut frost = self.frost_state(cfg)?;
        let loading = cfg.baseline_loading_multiplier * self.model.noise_power;
        let mut rsmi = PrefixLoadedSmi::new(&x, &self.steering);
        let mut out = Vec::with_capacity(cfg.m_values.len() * LEARN_SERIES.len());
        let mut next = 0;
        for &mc in &cfg.m_values {
            while next < mc {
                let col = x.column(next);
                quad.step(col)?;
                frost.step(col)?;
                next += 1;
            }
            out.push(self.optimal_sinr);
            out.push(self.sinr(&rsmi.weights(mc, loading)?)?);
            out.push(self.sinr(&quad.w)?);
            out.push(self.sinr(&frost.w)?);
        }
        Ok(out)
    }
}

const LEARN_SERIES: [Series; 4] = [Series::Optimal, Series::RsmiFixed, Series::QuadLms, Series::FrostLms];

/// Loaded SMI on growing prefixes of one training set, sharing the Gram
/// matrix `XᴴX` between prefixes (inversion-lemma form).
struct PrefixLoadedSmi<'a> {
    x: &'a TrainingSet,
    s: &'a [Complex64],
    gram: Vec<Complex64>,
    xs: Vec<Complex64>,
    filled: usize,
}

impl<'a> PrefixLoadedSmi<'a> {
    fn new(x: &'a TrainingSet, s: &'a [Complex64]) -> Self {
        let m = x.m();
        Self { x, s, gram: vec![Complex64::ZERO; m * m], xs: Vec::with_capacity(m), filled: 0 }
    }

    fn weights(&mut self, m: usize, alpha: f64) -> Result<Vec<Complex64>> {
        let stride = self.x.m();
        while self.filled < m {
            let j = self.filled;
            let cj = self.x.column(j);
            for i in 0..=j {
                let g = inner(self.x.column(i), cj);
                self.gram[i * stride + j] = g;
                self.gram[j * stride + i] = g.conj();
            }
            self.xs.push(inner(cj, self.s));
            self.filled += 1;
        }
        if m >= self.x.n() {
            let est = crate::covariance::sample_covariance(&self.x.prefix(m)?);
            return CholeskyFactor::new(&est.matrix().add_diagonal(alpha))?.solve(self.s);
        }
        let g = ComplexMatrix::from_fn(m, m, |i, j| {
            let v = self.gram[i * stride + j];
            if i == j {
                v + m as f64 * alpha
            } else {
                v
            }
        });
        let y = CholeskyFactor::new(&HermitianMatrix::symmetrized(g))?.solve(&self.xs[..m])?;
        let mut w = self.s.to_vec();
        for (j, yj) in y.iter().enumerate() {
            axpy(-*yj, self.x.column(j), &mut w);
        }
        Ok(w)
    }
}

/// Learning curves: mean output SINR at each checkpoint for every `(N, SIR)`.
pub fn run_quad_learn(cfg: &ScenarioConfig, runner: &Runner) -> std::result::Result<Vec<CurvePoint>, HarnessError> {
    if cfg.kind != ScenarioKind::QuadLearn {
        return Err(super::ConfigError::field("kind", "expected QUAD_LEARN").into());
    }
    cfg.validate()?;
    let mut points = Vec::new();
    for &sir in &cfg.sir_db_values {
        for &n in &cfg.n_values {
            let point = QuadPoint::new(cfg, n, sir)?;
            let rows = runner.map_trials(0..cfg.trials, |t| point.learning_trial(cfg, t))?;
            let means = aggregate_db(&rows);
            for (ci, &m) in cfg.m_values.iter().enumerate() {
                for (k, series) in LEARN_SERIES.iter().enumerate() {
                    points.push(CurvePoint {
                        series: *series,
                        n,
                        m,
                        sir_db: sir,
                        sinr_out_db: means[ci * LEARN_SERIES.len() + k],
                        trials: cfg.trials,
                    });
                }
            }
        }
    }
    Ok(points)
}

/// Averaged gain towards one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionGain {
    pub series: Series,
    pub angle_deg: f64,
    pub is_target: bool,
    pub gain_db: f64,
}

/// Averaged beampatterns after training.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternResult {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub grids: Vec<(Series, PatternGrid)>,
    /// Exact-angle gains towards the target and every jammer, relative to a
    /// unit-norm matched filter.
    pub directions: Vec<DirectionGain>,
}

impl PatternResult {
    pub fn signal_gain(&self, series: Series) -> Option<f64> {
        self.directions.iter().find(|d| d.series == series && d.is_target).map(|d| d.gain_db)
    }

    pub fn max_jammer_gain(&self, series: Series) -> Option<f64> {
        self.directions
            .iter()
            .filter(|d| d.series == series && !d.is_target)
            .map(|d| d.gain_db)
            .reduce(f64::max)
    }

    pub fn grid(&self, series: Series) -> Option<&PatternGrid> {
        self.grids.iter().find(|(s, _)| *s == series).map(|(_, g)| g)
    }
}

const PATTERN_SERIES: [Series; 3] = [Series::FrostLms, Series::QuadLms, Series::Lms];

impl QuadPoint {
    /// Trains all three array processors on one trial and returns the final weights.
    pub fn pattern_weights(&self, cfg: &ScenarioConfig, trial: usize) -> Result<[Vec<Complex64>; 3]> {
        let x = self.training(cfg, trial)?;
        let mut quad = self.quad_state(cfg)?;
        let mut frost = self.frost_state(cfg)?;
        let s_unit: Vec<Complex64> = self.steering.iter().map(|z| z / norm(&self.steering)).collect();
        let mut lms = NlmsState::new(s_unit, 2.0 * cfg.mu0);
        for col in x.columns() {
            quad.step(col)?;
            frost.step(col)?;
            lms.step(col, Complex64::ZERO)?;
            if cfg.quad_normalize {
                let nw = norm(&lms.w);
                lms.w.iter_mut().for_each(|z| *z /= nw);
            }
        }
        Ok([frost.w, quad.w, lms.w])
    }
}

/// Mean power patterns of Frost, quadratic-constraint and unconstrained LMS
/// after `M` training snapshots.
pub fn run_quad_pattern(cfg: &ScenarioConfig, runner: &Runner) -> std::result::Result<PatternResult, HarnessError> {
    if cfg.kind != ScenarioKind::QuadPattern {
        return Err(super::ConfigError::field("kind", "expected QUAD_PATTERN").into());
    }
    cfg.validate()?;
    let n = cfg.n_values[0];
    let point = QuadPoint::new(cfg, n, cfg.sir_db_values[0])?;
    let mut directions: Vec<(f64, bool)> = vec![(cfg.target_angle_deg, true)];
    directions.extend(cfg.jammer_angles_deg.iter().map(|a| (*a, false)));
    let angles = normalized_beampattern(&point.steering, cfg.pattern_grid)?.0;
    let g = angles.len();
    let rows = runner.map_trials(0..cfg.trials, |t| {
        let weights = point.pattern_weights(cfg, t)?;
        let mut row = Vec::with_capacity(3 * (g + directions.len()));
        for w in &weights {
            row.extend(normalized_beampattern(w, cfg.pattern_grid)?.1);
        }
        for w in &weights {
            row.extend(directions.iter().map(|(a, _)| pattern_gain(w, *a)));
        }
        Ok(row)
    })?;
    let linear_means = mean_columns(&rows);
    let grids = PATTERN_SERIES
        .iter()
        .enumerate()
        .map(|(k, s)| (*s, pattern_from_linear(angles.clone(), &linear_means[k * g..(k + 1) * g])))
        .collect();
    let base = 3 * g;
    let mut dirs = Vec::new();
    for (k, s) in PATTERN_SERIES.iter().enumerate() {
        for (d, (angle, is_target)) in directions.iter().enumerate() {
            dirs.push(DirectionGain {
                series: *s,
                angle_deg: *angle,
                is_target: *is_target,
                gain_db: 10.0 * linear_means[base + k * directions.len() + d].log10(),
            });
        }
    }
    Ok(PatternResult { n, m: point.m, trials: cfg.trials, grids, directions: dirs })
}
