//! Quality metrics: output SINR, clutter attenuation, improvement factor,
//! subclutter visibility, observability and beampatterns.

use std::io::{self, Write};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{check_len, MtiError, Result};
use crate::linalg::vector::{inner, norm_sqr};
use crate::linalg::HermitianMatrix;
use crate::signal::spatial_steering;

/// Linear SINR `|wᴴs|²/(wᴴRw)`; `s` carries the signal amplitude.
pub fn sinr_linear(w: impl AsRef<[Complex64]>, s: &[Complex64], r_true: &HermitianMatrix) -> Result<f64> {
    let w = w.as_ref();
    check_len(s.len(), w.len())?;
    let q = r_true.quadratic_form(w)?;
    if !(q > 0.0) {
        return Err(MtiError::NotPositiveDefinite { step: 0, pivot: q });
    }
    Ok(inner(w, s).norm_sqr() / q)
}

/// Output SINR in dB.
pub fn output_sinr(w: impl AsRef<[Complex64]>, s: &[Complex64], r_true: &HermitianMatrix) -> Result<f64> {
    Ok(10.0 * sinr_linear(w, s, r_true)?.log10())
}

fn positive(x: f64, what: &'static str) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(MtiError::ZeroPower(what))
    }
}

/// Clutter attenuation: per-element input clutter power over output clutter
/// power of the unit-norm filter, `(tr R_c/N)·(wᴴw)/(wᴴR_c·w)`.
pub fn clutter_attenuation(w: impl AsRef<[Complex64]>, r_clutter: &HermitianMatrix) -> Result<f64> {
    let w = w.as_ref();
    let p_in = positive(r_clutter.trace() / r_clutter.dim() as f64, "input clutter power")?;
    let p_out = positive(r_clutter.quadratic_form(w)? / positive(norm_sqr(w), "weight norm")?, "output clutter power")?;
    Ok(p_in / p_out)
}

/// Signal power gain of the unit-norm filter relative to one element,
/// `N·|wᴴs|²/(‖w‖²·‖s‖²)`.
pub fn signal_gain(w: impl AsRef<[Complex64]>, s: &[Complex64]) -> Result<f64> {
    let w = w.as_ref();
    check_len(s.len(), w.len())?;
    let den = positive(norm_sqr(w), "weight norm")? * positive(norm_sqr(s), "signal power")?;
    Ok(s.len() as f64 * inner(w, s).norm_sqr() / den)
}

/// Improvement factor: signal gain times clutter attenuation.
pub fn improvement_factor(w: impl AsRef<[Complex64]>, s: &[Complex64], r_clutter: &HermitianMatrix) -> Result<f64> {
    let w = w.as_ref();
    Ok(signal_gain(w, s)? * clutter_attenuation(w, r_clutter)?)
}

/// Subclutter visibility for a detection threshold ratio `q_threshold`.
pub fn subclutter_visibility(improvement: f64, q_threshold: f64) -> Result<f64> {
    Ok(improvement / positive(q_threshold, "threshold ratio")?)
}

/// Target power over the summed interference component powers.
pub fn observability(p_target: f64, p_interf_components: &[f64]) -> Result<f64> {
    let total = positive(p_interf_components.iter().sum(), "interference power")?;
    Ok(positive(p_target, "target power")? / total)
}

/// Gain of `w` towards `theta` degrees relative to a unit-norm matched filter:
/// `|wᴴe(θ)|²/(‖w‖²·N)`.
pub fn pattern_gain(w: impl AsRef<[Complex64]>, theta: f64) -> f64 {
    let w = w.as_ref();
    let e = spatial_steering(w.len(), theta);
    inner(w, &e).norm_sqr() / (norm_sqr(w) * w.len() as f64)
}

/// Power pattern on the `sin θ` grid of a zero-padded FFT.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternGrid {
    pub angles: Vec<f64>,
    pub gains_db: Vec<f64>,
}

impl PatternGrid {
    /// Gain at the grid angle nearest to `theta`.
    pub fn gain_at(&self, theta: f64) -> f64 {
        let i = self.angles.partition_point(|a| *a < theta);
        let pick = match (i.checked_sub(1), self.angles.get(i)) {
            (Some(lo), Some(hi)) if theta - self.angles[lo] <= hi - theta => lo,
            (Some(lo), None) => lo,
            _ => i,
        };
        self.gains_db[pick]
    }

    pub fn peak(&self) -> (f64, f64) {
        let (i, g) = self
            .gains_db
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, g)| if *g > acc.1 { (i, *g) } else { acc });
        (self.angles[i], g)
    }

    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "angle_deg,gain_db")?;
        for (a, g) in self.angles.iter().zip(&self.gains_db) {
            writeln!(out, "{a:.6},{g:.6}")?;
        }
        Ok(())
    }
}

/// `|FFT(w)|²` on `grid_size` bins, rotated so that bin `i` maps to
/// `sin θ = 2(i/grid − 1/2)`; bins with `|sin θ| ≥ 1` are dropped.
fn raw_pattern(w: &[Complex64], grid_size: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if grid_size < 2 * w.len() || w.is_empty() {
        return Err(MtiError::InvalidParameter(format!(
            "pattern grid {grid_size} must be at least twice the aperture {}",
            w.len()
        )));
    }
    let mut buf = vec![Complex64::ZERO; grid_size];
    buf[..w.len()].copy_from_slice(w);
    FftPlanner::new().plan_fft_forward(grid_size).process(&mut buf);
    let half = grid_size / 2;
    let mut angles = Vec::with_capacity(grid_size);
    let mut power = Vec::with_capacity(grid_size);
    for i in 0..grid_size {
        let sin_theta = 2.0 * (i as f64 / grid_size as f64 - 0.5);
        if sin_theta.abs() >= 1.0 {
            continue;
        }
        angles.push(sin_theta.asin().to_degrees());
        power.push(buf[(i + half) % grid_size].norm_sqr());
    }
    Ok((angles, power))
}

fn to_db(p: f64) -> f64 {
    10.0 * p.max(f64::MIN_POSITIVE).log10()
}

/// Power pattern `|FFT(w)/n|²` in dB; uniform weights peak at 0 dB.
pub fn beampattern(w: impl AsRef<[Complex64]>, grid_size: usize) -> Result<PatternGrid> {
    let w = w.as_ref();
    let n2 = (w.len() * w.len()) as f64;
    let (angles, power) = raw_pattern(w, grid_size)?;
    Ok(PatternGrid { angles, gains_db: power.into_iter().map(|p| to_db(p / n2)).collect() })
}

/// Linear pattern of `w/‖w‖` relative to a unit-norm matched filter, so the
/// value at angle `θ` equals [`pattern_gain`] at the grid angle.
pub fn normalized_beampattern(w: impl AsRef<[Complex64]>, grid_size: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let w = w.as_ref();
    let scale = positive(norm_sqr(w), "weight norm")? * w.len() as f64;
    let (angles, power) = raw_pattern(w, grid_size)?;
    Ok((angles, power.into_iter().map(|p| p / scale).collect()))
}

/// Converts a linear averaged pattern to dB.
pub fn pattern_from_linear(angles: Vec<f64>, linear: &[f64]) -> PatternGrid {
    PatternGrid { angles, gains_db: linear.iter().map(|p| to_db(*p)).collect() }
}
