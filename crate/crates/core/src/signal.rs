//! Steering vectors, Gaussian-spectrum clutter and jammer models, and
//! reproducible training-set synthesis.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{MtiError, Result};
use crate::linalg::{psd_factor, ComplexMatrix, HermitianMatrix, ToeplitzSpec};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// One received snapshot, `n` complex samples.
pub type Snapshot = [Complex64];

/// Two-way Doppler shift in Hz for radial velocity `v_r` (m/s) at carrier `f0` (Hz).
pub fn doppler_shift(v_r: f64, f0: f64) -> f64 {
    debug_assert!(f0 > 0.0);
    2.0 * v_r * f0 / SPEED_OF_LIGHT
}

/// Pulse-train steering vector `exp(j·2π·f_d·k/prf)`, `k = 0..n`; `‖s‖² = n`.
pub fn temporal_steering(n: usize, f_d: f64, prf: f64) -> Vec<Complex64> {
    let step = 2.0 * PI * f_d / prf;
    (0..n).map(|k| Complex64::from_polar(1.0, step * k as f64)).collect()
}

/// Half-wavelength uniform linear array steering vector for arrival angle
/// `theta` in degrees, phase-centred on the middle of the array; `‖e‖² = n`.
pub fn spatial_steering(n: usize, theta: f64) -> Vec<Complex64> {
    let phi = PI * theta.to_radians().sin();
    let centre = (n as f64 - 1.0) / 2.0;
    (0..n).map(|k| Complex64::from_polar(1.0, phi * (k as f64 - centre))).collect()
}

/// Whether the model describes a pulse train or an antenna aperture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    #[default]
    Temporal,
    Spatial,
}

/// Amplitude law of the interference sources in a spatial model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeLaw {
    /// Circular complex Gaussian amplitude per source and snapshot.
    #[default]
    Gaussian,
    /// Real, phase-locked Rayleigh amplitude with unit mean per source and snapshot.
    InPhaseRayleigh,
}

/// One spectral line of the interference.
///
/// `center` is a Doppler frequency in Hz for temporal models and an arrival
/// angle in degrees for spatial ones. `spectral_width` is the half-power
/// width in Hz and only applies to temporal models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClutterMode {
    pub center: f64,
    #[serde(default)]
    pub spectral_width: f64,
    pub power_fraction: f64,
}

/// Interference description: a set of spectral modes sharing a total power,
/// plus a white noise floor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClutterModel {
    pub n: usize,
    pub domain: Domain,
    /// Pulse repetition frequency in Hz; ignored for spatial models.
    pub prf: f64,
    pub modes: Vec<ClutterMode>,
    pub interference_power: f64,
    pub noise_power: f64,
    #[serde(default)]
    pub envelope: EnvelopeLaw,
}

impl ClutterModel {
    /// Two equal Gaussian-spectrum modes at 0 and 1003 Hz, 500 Hz wide.
    pub fn two_mode_temporal(n: usize, interference_power: f64, noise_power: f64, prf: f64) -> Self {
        let mode = |center| ClutterMode { center, spectral_width: 500.0, power_fraction: 0.5 };
        Self {
            n,
            domain: Domain::Temporal,
            prf,
            modes: vec![mode(0.0), mode(1003.0)],
            interference_power,
            noise_power,
            envelope: EnvelopeLaw::Gaussian,
        }
    }

    /// Point jammers of equal power at the given angles (degrees).
    pub fn jammers(n: usize, angles: &[f64], interference_power: f64, noise_power: f64, envelope: EnvelopeLaw) -> Self {
        let frac = 1.0 / angles.len().max(1) as f64;
        Self {
            n,
            domain: Domain::Spatial,
            prf: 0.0,
            modes: angles
                .iter()
                .map(|&center| ClutterMode { center, spectral_width: 0.0, power_fraction: frac })
                .collect(),
            interference_power,
            noise_power,
            envelope,
        }
    }

    /// Checks the structural invariants of the model.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(MtiError::InvalidParameter(msg.to_string()));
        if self.n == 0 {
            return bad("model size n must be positive");
        }
        if !(self.noise_power >= 0.0 && self.noise_power.is_finite()) {
            return bad("noise power must be finite and non-negative");
        }
        if !(self.interference_power >= 0.0 && self.interference_power.is_finite()) {
            return bad("interference power must be finite and non-negative");
        }
        if self.domain == Domain::Temporal && !(self.prf > 0.0 && self.prf.is_finite()) {
            return bad("prf must be positive for temporal models");
        }
        if self.domain == Domain::Temporal && self.envelope != EnvelopeLaw::Gaussian {
            return bad("temporal models only support Gaussian envelopes");
        }
        if !self.modes.is_empty() {
            let total: f64 = self.modes.iter().map(|m| m.power_fraction).sum();
            if (total - 1.0).abs() > 1e-12 {
                return bad("mode power fractions must sum to 1");
            }
        }
        for m in &self.modes {
            if !(m.power_fraction > 0.0 && m.power_fraction <= 1.0) {
                return bad("mode power fraction must lie in (0, 1]");
            }
            if !(m.spectral_width >= 0.0 && m.spectral_width.is_finite() && m.center.is_finite()) {
                return bad("mode centre and width must be finite, width non-negative");
            }
            if self.domain == Domain::Spatial && m.center.abs() >= 90.0 {
                return bad("arrival angles must lie strictly inside (-90, 90) degrees");
            }
        }
        Ok(())
    }

    /// Noise-free interference covariance; see [`clutter_covariance`].
    pub fn covariance(&self) -> ClutterCovariance {
        clutter_covariance(self)
    }

    /// Interference plus noise covariance.
    pub fn total_covariance(&self) -> HermitianMatrix {
        self.covariance().with_noise(self.noise_power)
    }

    fn mode_steering(&self, mode: &ClutterMode) -> Vec<Complex64> {
        match self.domain {
            Domain::Temporal => temporal_steering(self.n, mode.center, self.prf),
            Domain::Spatial => spatial_steering(self.n, mode.center),
        }
    }
}

/// Correlation coefficient between adjacent pulses of one Gaussian-spectrum mode.
pub(crate) fn mode_correlation(spectral_width: f64, prf: f64) -> f64 {
    let sigma2 = spectral_width * spectral_width / 2.77 / 2.0;
    (-2.0 * (PI * sigma2.sqrt() / prf).powi(2)).exp()
}

/// Interference covariance in its natural structure.
#[derive(Debug, Clone, PartialEq)]
pub enum ClutterCovariance {
    Toeplitz(ToeplitzSpec),
    Dense(HermitianMatrix),
}

impl ClutterCovariance {
    pub fn to_hermitian(&self) -> HermitianMatrix {
        match self {
            Self::Toeplitz(t) => t.to_hermitian(),
            Self::Dense(h) => h.clone(),
        }
    }

    /// `R + noise·I`
    pub fn with_noise(&self, noise: f64) -> HermitianMatrix {
        self.to_hermitian().add_diagonal(noise)
    }
}

/// Interference covariance without the noise floor.
///
/// Temporal lag `k` is `Σ P_l·ρ_l^{k²}·exp(j·2π·f_l·k/prf)`; spatial models
/// give `Σ P_l·e_l·e_lᴴ`.
pub fn clutter_covariance(model: &ClutterModel) -> ClutterCovariance {
    let n = model.n;
    match model.domain {
        Domain::Temporal => {
            let mut r = vec![Complex64::ZERO; n];
            for mode in &model.modes {
                let p = model.interference_power * mode.power_fraction;
                let rho = mode_correlation(mode.spectral_width, model.prf);
                for (k, rk) in r.iter_mut().enumerate() {
                    let kf = k as f64;
                    let phase = 2.0 * PI * mode.center * kf / model.prf;
                    *rk += Complex64::from_polar(p * rho.powf(kf * kf), phase);
                }
            }
            r[0].im = 0.0;
            ClutterCovariance::Toeplitz(ToeplitzSpec::new(r).expect("lag-zero term is real and finite"))
        }
        Domain::Spatial => {
            let steer: Vec<(f64, Vec<Complex64>)> = model
                .modes
                .iter()
                .map(|m| (model.interference_power * m.power_fraction, model.mode_steering(m)))
                .collect();
            ClutterCovariance::Dense(
                HermitianMatrix::from_outer_products(n, steer.iter().map(|(p, v)| (*p, v.as_slice())))
                    .expect("steering length equals n"),
            )
        }
    }
}

/// How the target amplitude varies across training snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeLaw {
    /// Unit-mean Rayleigh amplitude and uniform phase per snapshot.
    #[default]
    Rayleigh,
    /// Fixed unit amplitude and zero phase: a coherent target in every snapshot.
    Constant,
}

/// Target echo leaking into the training data.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    pub steering: Vec<Complex64>,
    pub power: f64,
    pub amplitude_law: AmplitudeLaw,
}

/// `n × m` training snapshots, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    n: usize,
    m: usize,
    data: Vec<Complex64>,
    seed: u64,
}

impl TrainingSet {
    pub fn from_columns(columns: &[Vec<Complex64>], seed: u64) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(MtiError::InvalidParameter("training set needs at least one snapshot".into()));
        };
        let n = first.len();
        let mut data = Vec::with_capacity(n * columns.len());
        for c in columns {
            crate::error::check_len(n, c.len())?;
            data.extend_from_slice(c);
        }
        Ok(Self { n, m: columns.len(), data, seed })
    }

    pub fn from_matrix(x: &ComplexMatrix, seed: u64) -> Self {
        let columns: Vec<Vec<Complex64>> = (0..x.cols()).map(|j| x.column(j)).collect();
        Self::from_columns(&columns, seed).expect("matrix has at least one column")
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.m, |i, j| self.data[j * self.n + i])
    }

    /// Snapshot length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of snapshots.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn column(&self, j: usize) -> &Snapshot {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn columns(&self) -> impl Iterator<Item = &Snapshot> + '_ {
        self.data.chunks_exact(self.n)
    }

    /// The first `m` snapshots.
    pub fn prefix(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.m {
            return Err(MtiError::InvalidParameter(format!("prefix length {m} outside 1..={}", self.m)));
        }
        Ok(Self { n: self.n, m, data: self.data[..m * self.n].to_vec(), seed: self.seed })
    }
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Rayleigh variate with scale `sigma` (mean `sigma·√(π/2)`).
fn rayleigh(rng: &mut impl Rng, sigma: f64) -> f64 {
    let u: f64 = rng.random();
    sigma * (-2.0 * (1.0 - u).ln()).sqrt()
}

/// Unit-mean Rayleigh amplitude.
pub(crate) fn unit_mean_rayleigh(rng: &mut impl Rng) -> f64 {
    rayleigh(rng, (2.0 / PI).sqrt())
}

enum Coloring {
    None,
    Factor(ComplexMatrix),
    Modes(Vec<(f64, Vec<Complex64>)>),
}

/// Draws `m` snapshots of interference, noise and optional target leakage.
///
/// Temporal clutter is coloured by a factor of the model covariance (with a
/// `1e-12·I` jitter so zero-width modes stay factorizable); spatial sources
/// are synthesised directly from their steering vectors. Every snapshot gets
/// an independent target amplitude and phase. The output is a pure function
/// of `(model, m, target, seed)`.
pub fn generate_training_set(
    model: &ClutterModel,
    m: usize,
    target: Option<&TargetSpec>,
    seed: u64,
) -> Result<TrainingSet> {
    model.validate()?;
    if m == 0 {
        return Err(MtiError::InvalidParameter("training set needs at least one snapshot".into()));
    }
    let n = model.n;
    if let Some(t) = target {
        crate::error::check_len(n, t.steering.len())?;
        if !(t.power >= 0.0 && t.power.is_finite()) {
            return Err(MtiError::InvalidParameter("target power must be finite and non-negative".into()));
        }
    }
    let coloring = if model.interference_power == 0.0 || model.modes.is_empty() {
        Coloring::None
    } else {
        match model.domain {
            Domain::Temporal => Coloring::Factor(psd_factor(&model.covariance().with_noise(1e-12))),
            Domain::Spatial => Coloring::Modes(
                model
                    .modes
                    .iter()
                    .map(|md| ((model.interference_power * md.power_fraction).sqrt(), model.mode_steering(md)))
                    .collect(),
            ),
        }
    };
    let noise_amp = model.noise_power.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![Complex64::ZERO; n * m];
    let mut g = vec![Complex64::ZERO; n];
    for col in data.chunks_exact_mut(n) {
        match &coloring {
            Coloring::None => {}
            Coloring::Factor(l) => {
                g.iter_mut().for_each(|z| *z = complex_normal(&mut rng));
                for (i, out) in col.iter_mut().enumerate() {
                    *out = l.row(i)[..=i].iter().zip(&g).map(|(a, b)| a * b).sum();
                }
            }
            Coloring::Modes(modes) => {
                for (amp, steer) in modes {
                    let a = match model.envelope {
                        EnvelopeLaw::Gaussian => complex_normal(&mut rng),
                        EnvelopeLaw::InPhaseRayleigh => Complex64::new(unit_mean_rayleigh(&mut rng), 0.0),
                    } * *amp;
                    crate::linalg::vector::axpy(a, steer, col);
                }
            }
        }
        for z in col.iter_mut() {
            *z += complex_normal(&mut rng) * noise_amp;
        }
        if let Some(t) = target {
            let a = match t.amplitude_law {
                AmplitudeLaw::Rayleigh => {
                    let amp = unit_mean_rayleigh(&mut rng);
                    let phase = rng.random_range(-PI..PI);
                    Complex64::from_polar(amp, phase)
                }
                AmplitudeLaw::Constant => Complex64::ONE,
            } * t.power.sqrt();
            crate::linalg::vector::axpy(a, &t.steering, col);
        }
    }
    Ok(TrainingSet { n, m, data, seed })
}
