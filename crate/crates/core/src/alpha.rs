//! Iterative choice of the diagonal loading level for loaded SMI.
//!
//! Each iteration linearises the empirical output SINR around the current
//! loading `α` using `w̃ = (R̂+αI)⁻¹s` and `ṽ = (R̂+αI)⁻¹w̃`, and jumps to
//! the stationary point of that approximation. No knowledge of the true
//! covariance or of the contamination level is used.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::covariance::CovarianceEstimate;
use crate::direct::{AlgorithmTag, WeightVector};
use crate::error::{check_len, MtiError, Result};
use crate::linalg::{vector::inner, vector::norm, CholeskyFactor};

const DEGENERATE: f64 = 1e-300;

/// Diagnostics recorded for one optimizer iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaIteration {
    /// Loading used for the solves of this iteration.
    pub alpha: f64,
    pub w_tilde: Vec<Complex64>,
    pub v_tilde: Vec<Complex64>,
    pub lambda: f64,
}

/// Lagrange multiplier of the linearised problem:
/// `λ = −1 − [2·Re(w̃ᴴṽ·(1 − w̃ᴴs)) + Re(w̃ᴴw̃·ṽᴴs)] / |sᴴṽ|²`.
pub fn lambda_of(w_tilde: &[Complex64], v_tilde: &[Complex64], s: &[Complex64]) -> Result<f64> {
    check_len(s.len(), w_tilde.len())?;
    check_len(s.len(), v_tilde.len())?;
    let sv = inner(s, v_tilde);
    let den = sv.norm_sqr();
    if den < DEGENERATE {
        return Err(MtiError::DegenerateDirection("s^H v_tilde vanishes"));
    }
    let wv = inner(w_tilde, v_tilde);
    let ws = inner(w_tilde, s);
    let ww = inner(w_tilde, w_tilde);
    let vs = inner(v_tilde, s);
    let num = 2.0 * (wv * (Complex64::ONE - ws)).re + (ww * vs).re;
    Ok(-1.0 - num / den)
}

/// Loading update `α = Re(w̃ᴴw̃ + ṽᴴs + λ·ṽᴴs) / Re(2·ṽᴴw̃)`, clamped at zero.
pub fn alpha_update(w_tilde: &[Complex64], v_tilde: &[Complex64], s: &[Complex64], lambda: f64) -> Result<f64> {
    check_len(s.len(), w_tilde.len())?;
    check_len(s.len(), v_tilde.len())?;
    let den = 2.0 * inner(v_tilde, w_tilde).re;
    if den.abs() < DEGENERATE {
        return Err(MtiError::DegenerateDirection("v_tilde^H w_tilde vanishes"));
    }
    let vs = inner(v_tilde, s);
    let num = (inner(w_tilde, w_tilde) + vs + vs * lambda).re;
    let alpha = num / den;
    if !alpha.is_finite() {
        return Err(MtiError::NonFinite("loading update"));
    }
    Ok(alpha.max(0.0))
}

/// Result of [`LoadingOptimizer::optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct LoadingSolution {
    pub alpha: f64,
    pub weights: WeightVector,
    pub trace: Vec<AlphaIteration>,
}

/// Settings for the loading optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadingOptimizer {
    /// Number of linearise-and-update steps `T`.
    pub iterations: usize,
    /// Starting loading as a multiple of the noise power.
    pub alpha0_multiplier: f64,
}

impl Default for LoadingOptimizer {
    fn default() -> Self {
        Self { iterations: 3, alpha0_multiplier: 1.0 }
    }
}

impl LoadingOptimizer {
    /// Runs `T` updates from `α₀ = alpha0_multiplier·σ²` and returns
    /// `w = (R̂ + α_T·I)⁻¹·s` together with the per-iteration trace.
    ///
    /// The steering vector is normalised to unit length for the updates,
    /// since the update is not invariant to the scale of `s`.
    pub fn optimize(&self, r_hat: &CovarianceEstimate, s: &[Complex64], sigma2_noise: f64) -> Result<LoadingSolution> {
        check_len(r_hat.dim(), s.len())?;
        if self.iterations == 0 {
            return Err(MtiError::InvalidParameter("at least one iteration is required".into()));
        }
        let alpha0 = self.alpha0_multiplier * sigma2_noise;
        if !(alpha0 > 0.0 && alpha0.is_finite()) {
            return Err(MtiError::InvalidParameter(format!("initial loading must be positive, got {alpha0}")));
        }
        let s_norm = norm(s);
        if s_norm == 0.0 {
            return Err(MtiError::ZeroSteering);
        }
        let s_unit: Vec<Complex64> = s.iter().map(|z| z / s_norm).collect();
        let mut alpha = alpha0;
        let mut trace = Vec::with_capacity(self.iterations);
        for _ in 0..self.iterations {
            let factor = CholeskyFactor::new(&r_hat.matrix().add_diagonal(alpha))?;
            let w_tilde = factor.solve(&s_unit)?;
            let v_tilde = factor.solve(&w_tilde)?;
            let lambda = lambda_of(&w_tilde, &v_tilde, &s_unit)?;
            let next = alpha_update(&w_tilde, &v_tilde, &s_unit, lambda)?;
            trace.push(AlphaIteration { alpha, w_tilde, v_tilde, lambda });
            alpha = next;
        }
        let w = CholeskyFactor::new(&r_hat.matrix().add_diagonal(alpha))?.solve(s)?;
        Ok(LoadingSolution { alpha, weights: WeightVector::new(w, AlgorithmTag::Rsmi)?, trace })
    }
}

/// [`LoadingOptimizer`] with `α₀ = σ²` and `T = iterations`.
pub fn optimize_loading(
    r_hat: &CovarianceEstimate,
    s: &[Complex64],
    sigma2_noise: f64,
    iterations: usize,
) -> Result<LoadingSolution> {
    LoadingOptimizer { iterations, alpha0_multiplier: 1.0 }.optimize(r_hat, s, sigma2_noise)
}

/// Writes `iteration,alpha,lambda` rows for a trace.
pub fn write_trace_csv(trace: &[AlphaIteration], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "iteration,alpha,lambda")?;
    for (i, it) in trace.iter().enumerate() {
        writeln!(out, "{},{:e},{:e}", i + 1, it.alpha, it.lambda)?;
    }
    Ok(())
}
