//! Scenario configuration: per-kind defaults and the TOML file format.
//!
//! A configuration file names the scenario `kind` and may override any
//! scenario field either at top level or in a section named after the kind
//! (`[reg_aut]`, `[quad_learn]`, `[quad_pattern]`, `[custom]`); section
//! values win. Run settings `out_dir`, `plot`, `listing_compat` and
//! `workers` live at top level.
//!
//! ```toml
//! kind = "REG_AUT"
//! out_dir = "results"
//! trials = 50
//!
//! [reg_aut]
//! n_values = [8, 16]
//! sir_db_values = [20, 0]
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adaptive::InitialWeights;
use crate::signal::{AmplitudeLaw, ClutterMode, ClutterModel, Domain, EnvelopeLaw};

/// Which experiment to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScenarioKind {
    RegAut,
    QuadLearn,
    QuadPattern,
    Custom,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 4] = [Self::RegAut, Self::QuadLearn, Self::QuadPattern, Self::Custom];

    /// Stable identifier mixed into trial seeds.
    pub fn id(self) -> u64 {
        match self {
            Self::RegAut => 1,
            Self::QuadLearn => 2,
            Self::QuadPattern => 3,
            Self::Custom => 4,
        }
    }

    /// Section name and output file prefix.
    pub fn section(self) -> &'static str {
        match self {
            Self::RegAut => "reg_aut",
            Self::QuadLearn => "quad_learn",
            Self::QuadPattern => "quad_pattern",
            Self::Custom => "custom",
        }
    }
}

/// Gain on the constraint term of the quadratic-constraint LMS update.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConstraintGain {
    Fixed(f64),
    Named(NamedGain),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedGain {
    /// `√N`.
    SqrtN,
}

impl ConstraintGain {
    pub fn value(self, n: usize) -> f64 {
        match self {
            Self::Fixed(g) => g,
            Self::Named(NamedGain::SqrtN) => (n as f64).sqrt(),
        }
    }
}

/// Full description of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub n_values: Vec<usize>,
    /// Training size as a multiple of `N` (REG_AUT, CUSTOM).
    pub m_ratios: Vec<f64>,
    /// Learning-curve checkpoints (QUAD_LEARN) or the training length (QUAD_PATTERN).
    pub m_values: Vec<usize>,
    pub sir_db_values: Vec<f64>,
    pub snr_db: f64,
    pub noise_level_db: f64,
    pub contaminate: bool,
    pub target_law: AmplitudeLaw,
    pub trials: usize,
    pub iterations: usize,
    pub alpha0_multiplier: f64,
    pub baseline_loading_multiplier: f64,
    pub mu0: f64,
    pub domain: Domain,
    pub prf: f64,
    pub clutter_modes: Vec<ClutterMode>,
    pub jammer_angles_deg: Vec<f64>,
    pub jammer_envelope: EnvelopeLaw,
    pub target_doppler_hz: f64,
    pub target_angle_deg: f64,
    pub initial_weights: InitialWeights,
    pub quad_normalize: bool,
    pub quad_constraint_gain: ConstraintGain,
    pub pattern_grid: usize,
    pub base_seed: u64,
}

const SIR_SWEEP: [f64; 8] = [20.0, 10.0, 0.0, -10.0, -20.0, -40.0, -60.0, -80.0];

impl ScenarioConfig {
    pub fn defaults(kind: ScenarioKind) -> Self {
        let two_mode = ClutterModel::two_mode_temporal(1, 1.0, 1.0, 20_000.0).modes;
        let base = Self {
            kind,
            n_values: vec![8, 16, 32, 64, 128],
            m_ratios: vec![0.5, 1.0],
            m_values: vec![],
            sir_db_values: SIR_SWEEP.to_vec(),
            snr_db: 10.0,
            noise_level_db: -70.0,
            contaminate: true,
            target_law: AmplitudeLaw::Rayleigh,
            trials: 500,
            iterations: 3,
            alpha0_multiplier: 1.0,
            baseline_loading_multiplier: 10.0,
            mu0: 0.25,
            domain: Domain::Temporal,
            prf: 20_000.0,
            clutter_modes: two_mode,
            jammer_angles_deg: vec![-14.0, 71.0, 66.0],
            jammer_envelope: EnvelopeLaw::InPhaseRayleigh,
            target_doppler_hz: 4_000.0,
            target_angle_deg: 0.0,
            initial_weights: InitialWeights::UnitNorm,
            quad_normalize: false,
            quad_constraint_gain: ConstraintGain::Fixed(1.0),
            pattern_grid: 4096,
            base_seed: 42,
        };
        match kind {
            ScenarioKind::RegAut => base,
            ScenarioKind::QuadLearn => Self {
                n_values: vec![256, 512, 1024],
                m_values: vec![8, 16, 32, 64, 96, 128, 192, 256],
                sir_db_values: vec![-60.0, -80.0],
                noise_level_db: -60.0,
                contaminate: false,
                trials: 100,
                domain: Domain::Spatial,
                ..base
            },
            ScenarioKind::QuadPattern => Self {
                n_values: vec![128],
                m_values: vec![1024],
                sir_db_values: vec![10.0],
                noise_level_db: -60.0,
                target_law: AmplitudeLaw::Constant,
                trials: 100,
                domain: Domain::Spatial,
                quad_normalize: true,
                quad_constraint_gain: ConstraintGain::Named(NamedGain::SqrtN),
                ..base
            },
            ScenarioKind::Custom => Self {
                n_values: vec![16],
                m_ratios: vec![2.0],
                sir_db_values: vec![20.0, 0.0, -20.0],
                contaminate: false,
                trials: 100,
                ..base
            },
        }
    }

    /// Fixed loading `16·σ²` and optimizer start `1.6·σ²`.
    pub fn apply_listing_compat(&mut self) {
        self.baseline_loading_multiplier = 16.0;
        self.alpha0_multiplier = 1.6;
    }

    pub fn noise_power(&self) -> f64 {
        10f64.powf(self.noise_level_db / 10.0)
    }

    pub fn signal_power(&self) -> f64 {
        self.noise_power() * 10f64.powf(self.snr_db / 10.0)
    }

    /// Total interference power for an input SIR.
    pub fn interference_power(&self, sir_db: f64) -> f64 {
        self.signal_power() / 10f64.powf(sir_db / 10.0)
    }

    /// Training size for `n` and a ratio.
    pub fn training_size(n: usize, ratio: f64) -> usize {
        (ratio * n as f64).round() as usize
    }

    /// Checks ranges and cross-field consistency.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |field: &str, msg: String| Err(ConfigError::field(field, msg));
        if self.trials == 0 {
            return fail("trials", "must be at least 1".into());
        }
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return fail("n_values", "must be a non-empty list of positive sizes".into());
        }
        if self.sir_db_values.is_empty() || self.sir_db_values.iter().any(|v| !v.is_finite()) {
            return fail("sir_db_values", "must be a non-empty list of finite values".into());
        }
        for (name, v) in [("snr_db", self.snr_db), ("noise_level_db", self.noise_level_db)] {
            if !v.is_finite() {
                return fail(name, "must be finite".into());
            }
        }
        if self.iterations == 0 {
            return fail("iterations", "must be at least 1".into());
        }
        for (name, v) in [
            ("alpha0_multiplier", self.alpha0_multiplier),
            ("baseline_loading_multiplier", self.baseline_loading_multiplier),
            ("mu0", self.mu0),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return fail(name, "must be positive".into());
            }
        }
        if let ConstraintGain::Fixed(g) = self.quad_constraint_gain {
            if !(g > 0.0 && g.is_finite()) {
                return fail("quad_constraint_gain", "must be positive or \"sqrt_n\"".into());
            }
        }
        match self.kind {
            ScenarioKind::RegAut | ScenarioKind::Custom => {
                if self.m_ratios.is_empty() || self.m_ratios.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
                    return fail("m_ratios", "must be a non-empty list of positive ratios".into());
                }
                for &n in &self.n_values {
                    for &r in &self.m_ratios {
                        if Self::training_size(n, r) == 0 {
                            return fail("m_ratios", format!("ratio {r} gives no snapshots for N = {n}"));
                        }
                    }
                }
            }
            ScenarioKind::QuadLearn => {
                if self.m_values.is_empty() || self.m_values[0] == 0 || self.m_values.windows(2).any(|w| w[0] >= w[1]) {
                    return fail("m_values", "checkpoints must be positive and strictly increasing".into());
                }
            }
            ScenarioKind::QuadPattern => {
                if self.n_values.len() != 1 || self.m_values.len() != 1 || self.sir_db_values.len() != 1 {
                    return fail("n_values", "pattern runs take exactly one N, one M and one SIR".into());
                }
                if self.m_values[0] == 0 {
                    return fail("m_values", "training length must be positive".into());
                }
                if self.pattern_grid < 2 * self.n_values[0] {
                    return fail("pattern_grid", "must be at least twice the array size".into());
                }
            }
        }
        let spatial = matches!(self.kind, ScenarioKind::QuadLearn | ScenarioKind::QuadPattern)
            || self.domain == Domain::Spatial;
        if spatial {
            if self.jammer_angles_deg.is_empty() {
                return fail("jammer_angles_deg", "at least one jammer is required".into());
            }
            if self.jammer_angles_deg.iter().chain([&self.target_angle_deg]).any(|a| !(a.abs() < 90.0)) {
                return fail("jammer_angles_deg", "angles must lie strictly inside (-90, 90)".into());
            }
        } else {
            if self.clutter_modes.is_empty() {
                return fail("clutter_modes", "at least one clutter mode is required".into());
            }
            if !(self.prf > 0.0 && self.prf.is_finite()) {
                return fail("prf", "must be positive".into());
            }
        }
        for &n in &self.n_values {
            self.interference_model(n, 0.0)
                .validate()
                .or_else(|e| fail(if spatial { "jammer_angles_deg" } else { "clutter_modes" }, e.to_string()))?;
        }
        Ok(())
    }

    /// Interference model for size `n` at input SIR `sir_db`.
    pub fn interference_model(&self, n: usize, sir_db: f64) -> ClutterModel {
        let p = self.interference_power(sir_db);
        let spatial = matches!(self.kind, ScenarioKind::QuadLearn | ScenarioKind::QuadPattern)
            || self.domain == Domain::Spatial;
        if spatial {
            ClutterModel::jammers(n, &self.jammer_angles_deg, p, self.noise_power(), self.jammer_envelope)
        } else {
            ClutterModel {
                n,
                domain: Domain::Temporal,
                prf: self.prf,
                modes: self.clutter_modes.clone(),
                interference_power: p,
                noise_power: self.noise_power(),
                envelope: EnvelopeLaw::Gaussian,
            }
        }
    }
}

/// Top-level run settings that do not affect results.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSettings {
    pub out_dir: Option<String>,
    pub plot: bool,
    pub listing_compat: bool,
    pub workers: Option<usize>,
}

/// Configuration problem, with the offending line and field when known.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ConfigError {
    pub fn field(field: &str, message: impl Into<String>) -> Self {
        Self { line: None, field: Some(field.to_string()), message: message.into() }
    }

    fn located(mut self, source: &str) -> Self {
        if self.line.is_none() {
            if let Some(f) = &self.field {
                self.line = find_key_line(source, f);
            }
        }
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("config error")?;
        if let Some(line) = self.line {
            write!(f, " at line {line}")?;
        }
        if let Some(field) = &self.field {
            write!(f, " in field `{field}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Last line (1-based) that assigns `key`.
fn find_key_line(source: &str, key: &str) -> Option<usize> {
    source
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim_start();
            t.strip_prefix(key)
                .map(|rest| rest.trim_start().starts_with('='))
                .unwrap_or(false)
        })
        .map(|(i, _)| i + 1)
        .last()
}

fn backticked(msg: &str) -> Option<String> {
    let start = msg.find('`')? + 1;
    let end = start + msg[start..].find('`')?;
    Some(msg[start..end].to_string())
}

/// Parses a configuration file into a validated scenario and run settings.
pub fn parse_config(source: &str) -> Result<(ScenarioConfig, RunSettings), ConfigError> {
    let table: toml::Table = toml::from_str(source).map_err(|e| {
        let line = e.span().map(|s| source[..s.start].matches('\n').count() + 1);
        ConfigError { line, field: backticked(e.message()), message: e.message().trim().to_string() }
    })?;
    let kind_value = table.get("kind").ok_or_else(|| ConfigError::field("kind", "missing required field"))?;
    let kind: ScenarioKind = kind_value
        .clone()
        .try_into()
        .map_err(|_| ConfigError::field("kind", format!("unknown scenario kind {kind_value}")).located(source))?;

    let sections: Vec<&str> = ScenarioKind::ALL.iter().map(|k| k.section()).collect();
    let mut settings = RunSettings::default();
    let mut top = toml::Table::new();
    for (key, value) in &table {
        match key.as_str() {
            "kind" => {}
            "out_dir" => settings.out_dir = Some(expect_type(value.as_str(), key, "a string", source)?.to_string()),
            "plot" => settings.plot = expect_type(value.as_bool(), key, "a boolean", source)?,
            "listing_compat" => settings.listing_compat = expect_type(value.as_bool(), key, "a boolean", source)?,
            "workers" => {
                let w = expect_type(value.as_integer(), key, "an integer", source)?;
                if w < 1 {
                    return Err(ConfigError::field(key, "must be at least 1").located(source));
                }
                settings.workers = Some(w as usize);
            }
            k if sections.contains(&k) => {
                if value.as_table().is_none() {
                    return Err(ConfigError::field(key, "must be a table").located(source));
                }
            }
            _ => {
                top.insert(key.clone(), value.clone());
            }
        }
    }

    let mut defaults = ScenarioConfig::defaults(kind);
    if settings.listing_compat {
        defaults.apply_listing_compat();
    }
    let mut merged = toml::Table::try_from(&defaults).expect("defaults serialize");
    let empty = toml::Table::new();
    let section = table.get(kind.section()).and_then(|v| v.as_table()).unwrap_or(&empty);
    for (key, value) in top.iter().chain(section) {
        if key == "kind" {
            continue;
        }
        if !merged.contains_key(key) {
            return Err(ConfigError::field(key, "unknown field").located(source));
        }
        merged.insert(key.clone(), value.clone());
    }
    let cfg: ScenarioConfig = toml::Value::Table(merged).try_into().map_err(|e: toml::de::Error| {
        let field = backticked(e.message()).or_else(|| {
            // Type errors do not name the key; find the first override that fails alone.
            top.iter().chain(section).map(|(k, _)| k).find(|key| {
                let mut probe = toml::Table::try_from(&defaults).expect("defaults serialize");
                let value = section.get(key.as_str()).or_else(|| top.get(key.as_str())).cloned();
                probe.insert((*key).clone(), value.expect("key comes from an override table"));
                toml::Value::Table(probe).try_into::<ScenarioConfig>().is_err()
            }).cloned()
        });
        ConfigError { line: None, field, message: e.message().trim().to_string() }.located(source)
    })?;
    cfg.validate().map_err(|e| e.located(source))?;
    Ok((cfg, settings))
}

fn expect_type<T>(v: Option<T>, key: &str, what: &str, source: &str) -> Result<T, ConfigError> {
    v.ok_or_else(|| ConfigError::field(key, format!("must be {what}")).located(source))
}
