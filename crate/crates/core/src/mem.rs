//! Maximum-entropy (autoregressive) modelling: Yule-Walker from a known
//! covariance, the Burg lattice from data, the MEM spectrum and the
//! prediction-error whitening filter.
//!
//! Coefficients use the predictor convention `x̂(n) = Σ C(i)·x(n−i)`, so the
//! whitening filter is `[1, −C(1), …, −C(M)]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{MtiError, Result};
use crate::linalg::{levinson_durbin, ToeplitzSpec};

/// Autoregressive model of order `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArModel {
    pub order: usize,
    /// `C(1..=M)`
    pub coefficients: Vec<Complex64>,
    /// Prediction error power at order `M`.
    pub error_power: f64,
    /// `C_m(m)` for `m = 1..=M`.
    pub reflections: Vec<Complex64>,
    /// Prediction error power for orders `0..=M`.
    pub error_history: Vec<f64>,
}

impl ArModel {
    /// White process of power `p`.
    pub fn white(p: f64) -> Self {
        Self { order: 0, coefficients: vec![], error_power: p, reflections: vec![], error_history: vec![p] }
    }
}

/// Solves the Yule-Walker equations for a positive definite Toeplitz covariance.
pub fn yule_walker(t: &ToeplitzSpec, order: usize) -> Result<ArModel> {
    if order >= t.dim() {
        return Err(MtiError::OrderTooHigh { order, available: t.dim() });
    }
    let lev = levinson_durbin(t, order)?;
    Ok(ArModel {
        order,
        coefficients: lev.a[1..].iter().map(|z| -z).collect(),
        error_power: lev.rho,
        reflections: lev.reflections.iter().map(|z| -z).collect(),
        error_history: lev.errors,
    })
}

/// Burg estimate from a single record.
pub fn burg_estimate(x: &[Complex64], order: usize) -> Result<ArModel> {
    let len = x.len();
    if order >= len {
        return Err(MtiError::OrderTooHigh { order, available: len });
    }
    let mut err = x.iter().map(|z| z.norm_sqr()).sum::<f64>() / len as f64;
    if !(err > 0.0) {
        return Err(MtiError::ZeroPower("Burg input has no energy"));
    }
    let mut f = x.to_vec();
    let mut b = x.to_vec();
    let mut a = vec![Complex64::ONE];
    let mut reflections = Vec::with_capacity(order);
    let mut error_history = vec![err];
    for m in 1..=order {
        let mut num = Complex64::ZERO;
        let mut den = 0.0;
        for n in m..len {
            num += f[n] * b[n - 1].conj();
            den += f[n].norm_sqr() + b[n - 1].norm_sqr();
        }
        let k = if den > 0.0 { -2.0 * num / den } else { Complex64::ZERO };
        for n in (m..len).rev() {
            let (fo, bo) = (f[n], b[n - 1]);
            f[n] = fo + k * bo;
            b[n] = bo + k.conj() * fo;
        }
        let mut next = a.clone();
        next.push(k);
        for i in 1..m {
            next[i] = a[i] + k * a[m - i].conj();
        }
        a = next;
        err *= 1.0 - k.norm_sqr();
        reflections.push(-k);
        error_history.push(err);
    }
    Ok(ArModel {
        order,
        coefficients: a[1..].iter().map(|z| -z).collect(),
        error_power: err,
        reflections,
        error_history,
    })
}

/// MEM spectrum `S(f) = P/(prf·|1 − Σ C(i)·e^{−j2πif/prf}|²)` at `f = i·prf/grid`.
pub fn mem_psd(model: &ArModel, prf: f64, grid: usize) -> Result<Vec<f64>> {
    if grid < 2 {
        return Err(MtiError::InvalidParameter("PSD grid needs at least two points".into()));
    }
    Ok((0..grid)
        .map(|g| {
            let nu = g as f64 / grid as f64;
            let denom: Complex64 = Complex64::ONE
                - model
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * Complex64::from_polar(1.0, -2.0 * PI * (i + 1) as f64 * nu))
                    .sum::<Complex64>();
            model.error_power / prf / denom.norm_sqr()
        })
        .collect())
}

/// `e(n) = x(n) − Σ C(i)·x(n−i)` with zero initial conditions.
pub fn prediction_error_filter(model: &ArModel, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() <= model.order {
        return Err(MtiError::OrderTooHigh { order: model.order, available: x.len() });
    }
    Ok((0..x.len())
        .map(|n| {
            let pred: Complex64 = model
                .coefficients
                .iter()
                .enumerate()
                .take_while(|(i, _)| *i < n)
                .map(|(i, c)| c * x[n - i - 1])
                .sum();
            x[n] - pred
        })
        .collect())
}

/// Spectral flatness `exp(mean ln S)/mean S` of a Welch periodogram with
/// non-overlapping segments of length `segment`.
pub fn spectral_flatness(x: &[Complex64], segment: usize) -> Result<f64> {
    if segment < 2 || x.len() < segment {
        return Err(MtiError::InvalidParameter(format!(
            "need at least one segment of length >= 2 (segment {segment}, samples {})",
            x.len()
        )));
    }
    let fft = FftPlanner::new().plan_fft_forward(segment);
    let mut psd = vec![0.0; segment];
    let mut buf = vec![Complex64::ZERO; segment];
    for chunk in x.chunks_exact(segment) {
        buf.copy_from_slice(chunk);
        fft.process(&mut buf);
        for (p, z) in psd.iter_mut().zip(&buf) {
            *p += z.norm_sqr();
        }
    }
    let mean = psd.iter().sum::<f64>() / segment as f64;
    if !(mean > 0.0) {
        return Err(MtiError::ZeroPower("signal has no energy"));
    }
    if psd.iter().any(|p| *p <= 0.0) {
        return Ok(0.0);
    }
    let log_mean = psd.iter().map(|p| p.ln()).sum::<f64>() / segment as f64;
    Ok(log_mean.exp() / mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn white_covariance() {
        let t = ToeplitzSpec::new(vec![c(2.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        let m = yule_walker(&t, 3).unwrap();
        assert!(m.coefficients.iter().all(|z| *z == Complex64::ZERO));
        assert_eq!(m.error_power, 2.0);
    }

    #[test]
    fn ar1_covariance() {
        let a: f64 = 0.6;
        let t = ToeplitzSpec::new((0..5).map(|k| c(a.powi(k))).collect()).unwrap();
        let m = yule_walker(&t, 1).unwrap();
        assert!((m.coefficients[0] - c(a)).norm() < 1e-14);
        assert!((m.error_power - (1.0 - a * a)).abs() < 1e-14);
        assert!(matches!(yule_walker(&t, 5), Err(MtiError::OrderTooHigh { .. })));
    }

    #[test]
    fn cisoid_reflection_is_unit() {
        let x: Vec<Complex64> = (0..256).map(|n| Complex64::from_polar(1.0, 0.3 * n as f64)).collect();
        let m = burg_estimate(&x, 1).unwrap();
        assert!((m.reflections[0].norm() - 1.0).abs() < 1e-9);
        assert!((m.coefficients[0] - Complex64::from_polar(1.0, 0.3)).norm() < 1e-9);
    }

    #[test]
    fn order_zero_filter_is_identity() {
        let x = vec![c(1.0), c(-2.0), Complex64::new(0.5, 3.0)];
        assert_eq!(prediction_error_filter(&ArModel::white(1.0), &x).unwrap(), x);
    }

    #[test]
    fn flat_spectrum_for_zero_coefficients() {
        let psd = mem_psd(&ArModel::white(3.0), 1000.0, 16).unwrap();
        assert!(psd.iter().all(|p| (p - 3.0 / 1000.0).abs() < 1e-18));
    }
}
