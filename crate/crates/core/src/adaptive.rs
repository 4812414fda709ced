//! Sample-by-sample weight updaters: LMS, NLMS, Frost's linearly constrained
//! LMS, the quadratically constrained LMS and exponentially weighted RLS.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::direct::{AlgorithmTag, WeightVector};
use crate::error::{check_len, MtiError, Result};
use crate::linalg::vector::{axpy, inner, norm, norm_sqr};
use crate::linalg::ComplexMatrix;
use crate::signal::Snapshot;

fn energy(x: &Snapshot) -> Result<f64> {
    let e = norm_sqr(x);
    if e > 0.0 {
        Ok(e)
    } else {
        Err(MtiError::ZeroSnapshot)
    }
}

/// Fixed-step complex LMS: `e = d − wᴴx`, `w ← w + μ·x·e*`.
///
/// With `d = 0` this is the canceller update `w ← w − μ·x·(xᴴw)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LmsState {
    pub w: Vec<Complex64>,
    pub mu: f64,
}

impl LmsState {
    pub fn new(w0: Vec<Complex64>, mu: f64) -> Self {
        Self { w: w0, mu }
    }

    /// Applies one update and returns the a-priori error.
    pub fn step(&mut self, x: &Snapshot, d: Complex64) -> Result<Complex64> {
        check_len(self.w.len(), x.len())?;
        let e = d - inner(&self.w, x);
        axpy(e.conj() * self.mu, x, &mut self.w);
        Ok(e)
    }

    pub fn weights(&self, tag: AlgorithmTag) -> Result<WeightVector> {
        WeightVector::new(self.w.clone(), tag)
    }
}

/// LMS with the step normalised by snapshot energy: `μ = μ₀/(xᴴx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NlmsState {
    pub w: Vec<Complex64>,
    pub mu0: f64,
}

impl NlmsState {
    pub fn new(w0: Vec<Complex64>, mu0: f64) -> Self {
        Self { w: w0, mu0 }
    }

    pub fn step(&mut self, x: &Snapshot, d: Complex64) -> Result<Complex64> {
        check_len(self.w.len(), x.len())?;
        let mu = self.mu0 / energy(x)?;
        let e = d - inner(&self.w, x);
        axpy(e.conj() * mu, x, &mut self.w);
        Ok(e)
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::new(self.w.clone(), AlgorithmTag::Nlms)
    }
}

/// Frost's linearly constrained LMS with unit response towards `s`.
///
/// `y = wᴴx`, `w ← P·(w − μ·y*·x) + f` with `P = I − s·sᴴ/(sᴴs)`,
/// `f = s/(sᴴs)` and `μ = c·μ₀/(xᴴx)`, so `sᴴw = 1` after every step.
#[derive(Debug, Clone, PartialEq)]
pub struct FrostState {
    pub w: Vec<Complex64>,
    s: Vec<Complex64>,
    s_norm2: f64,
    pub mu0: f64,
    pub step_scale: f64,
}

impl FrostState {
    /// Starts from the quiescent weights `f`.
    pub fn new(s: &[Complex64], mu0: f64) -> Result<Self> {
        let s_norm2 = norm_sqr(s);
        if s_norm2 == 0.0 {
            return Err(MtiError::ZeroSteering);
        }
        let w = s.iter().map(|z| z / s_norm2).collect();
        Ok(Self { w, s: s.to_vec(), s_norm2, mu0, step_scale: 2.0 })
    }

    /// Starts from `w0`, which need not satisfy the constraint; the first
    /// step projects it onto `sᴴw = 1`.
    pub fn with_initial(mut self, w0: Vec<Complex64>) -> Result<Self> {
        check_len(self.s.len(), w0.len())?;
        self.w = w0;
        Ok(self)
    }

    pub fn steering(&self) -> &[Complex64] {
        &self.s
    }

    /// Returns the output `y = wᴴx` before the update.
    pub fn step(&mut self, x: &Snapshot) -> Result<Complex64> {
        check_len(self.w.len(), x.len())?;
        let mu = self.step_scale * self.mu0 / energy(x)?;
        let y = inner(&self.w, x);
        axpy(-y.conj() * mu, x, &mut self.w);
        let proj = inner(&self.s, &self.w);
        let c = (Complex64::ONE - proj) / self.s_norm2;
        axpy(c, &self.s, &mut self.w);
        Ok(y)
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::new(self.w.clone(), AlgorithmTag::FrostLms)
    }
}

/// Starting weights for the constrained LMS variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialWeights {
    /// `s/‖s‖`
    #[default]
    UnitNorm,
    /// `s/N`
    OverN,
}

impl InitialWeights {
    pub fn weights(self, s: &[Complex64]) -> Result<Vec<Complex64>> {
        let scale = match self {
            Self::UnitNorm => norm(s),
            Self::OverN => s.len() as f64,
        };
        if !(scale > 0.0) || norm_sqr(s) == 0.0 {
            return Err(MtiError::ZeroSteering);
        }
        Ok(s.iter().map(|z| z / scale).collect())
    }
}

/// LMS with a quadratic constraint on the look-direction response.
///
/// Each step approximates the Lagrange multiplier by
/// `λ = |xᴴw|²/|sᴴw|²` and moves along `x·(xᴴw) − g·λ·s·(sᴴw)` with
/// `μ = c·μ₀/(xᴴx)`; `s` is held at unit norm and `g` defaults to 1.
/// Fixed points in expectation satisfy `R·w = λ·R_s·w`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadLmsState {
    pub w: Vec<Complex64>,
    s: Vec<Complex64>,
    pub mu0: f64,
    pub step_scale: f64,
    pub constraint_gain: f64,
    pub normalize: bool,
}

impl QuadLmsState {
    pub fn new(s: &[Complex64], mu0: f64, init: InitialWeights) -> Result<Self> {
        let w = init.weights(s)?;
        let s_unit = InitialWeights::UnitNorm.weights(s)?;
        Ok(Self { w, s: s_unit, mu0, step_scale: 2.0, constraint_gain: 1.0, normalize: false })
    }

    /// Rescale `w` to unit norm after every step.
    pub fn with_normalize(mut self, normalize: bool) -> Self {
        self.normalize = normalize;
        self
    }

    pub fn with_constraint_gain(mut self, g: f64) -> Self {
        self.constraint_gain = g;
        self
    }

    pub fn step(&mut self, x: &Snapshot) -> Result<()> {
        check_len(self.w.len(), x.len())?;
        let sw = inner(&self.s, &self.w);
        if sw.norm() < 1e-300 {
            return Err(MtiError::ConstraintDirectionCollapse);
        }
        let xw = inner(x, &self.w);
        if xw == Complex64::ZERO {
            return Ok(());
        }
        let mu = self.step_scale * self.mu0 / energy(x)?;
        let lambda = xw.norm_sqr() / sw.norm_sqr();
        axpy(-xw * mu, x, &mut self.w);
        axpy(sw * (mu * self.constraint_gain * lambda), &self.s, &mut self.w);
        if self.normalize {
            let nw = norm(&self.w);
            self.w.iter_mut().for_each(|z| *z /= nw);
        }
        if !crate::linalg::vector::all_finite(&self.w) {
            return Err(MtiError::NonFinite("quadratic-constraint LMS weights"));
        }
        Ok(())
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::new(self.w.clone(), AlgorithmTag::QuadLms)
    }
}

/// Exponentially weighted recursive least squares.
#[derive(Debug, Clone, PartialEq)]
pub struct RlsState {
    pub w: Vec<Complex64>,
    p: ComplexMatrix,
    pub forgetting: f64,
}

impl RlsState {
    /// `w = 0`, `P = δ⁻¹·I`.
    pub fn new(n: usize, delta: f64, forgetting: f64) -> Result<Self> {
        if !(forgetting > 0.0 && forgetting <= 1.0) {
            return Err(MtiError::InvalidParameter(format!("forgetting factor {forgetting} outside (0, 1]")));
        }
        if !(delta > 0.0) {
            return Err(MtiError::InvalidParameter("RLS regularisation must be positive".into()));
        }
        Ok(Self {
            w: vec![Complex64::ZERO; n],
            p: ComplexMatrix::identity(n).scale(Complex64::new(1.0 / delta, 0.0)),
            forgetting,
        })
    }

    pub fn p(&self) -> &ComplexMatrix {
        &self.p
    }

    /// Applies one update and returns the a-priori error `d − wᴴx`.
    pub fn step(&mut self, x: &Snapshot, d: Complex64) -> Result<Complex64> {
        let n = self.w.len();
        check_len(n, x.len())?;
        let e = d - inner(&self.w, x);
        if x.iter().all(|z| *z == Complex64::ZERO) {
            return Ok(e);
        }
        let px = self.p.mul_vec(x)?;
        let denom = self.forgetting + inner(x, &px).re;
        let k: Vec<Complex64> = px.iter().map(|z| z / denom).collect();
        let inv_l = 1.0 / self.forgetting;
        for i in 0..n {
            for j in 0..n {
                self.p[(i, j)] = (self.p[(i, j)] - k[i] * px[j].conj()) * inv_l;
            }
        }
        for i in 0..n {
            self.p[(i, i)].im = 0.0;
            for j in 0..i {
                let v = (self.p[(i, j)] + self.p[(j, i)].conj()) * 0.5;
                self.p[(i, j)] = v;
                self.p[(j, i)] = v.conj();
            }
        }
        axpy(e.conj(), &k, &mut self.w);
        Ok(e)
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::new(self.w.clone(), AlgorithmTag::Rls)
    }
}

/// `sin(Nφ/2) / (N·sin(φ/2))`: the mean of the entries of a centred steering
/// vector with inter-element phase `φ`.
pub fn steering_mean_closed_form(n: usize, phi: f64) -> f64 {
    let nf = n as f64;
    (nf * phi / 2.0).sin() / (nf * (phi / 2.0).sin())
}

/// Mean of `exp(j·φ·(k − (N−1)/2))` over `k = 0..N`.
pub fn steering_mean_direct(n: usize, phi: f64) -> Complex64 {
    let centre = (n as f64 - 1.0) / 2.0;
    let sum: Complex64 = (0..n).map(|k| Complex64::from_polar(1.0, phi * (k as f64 - centre))).sum();
    sum / n as f64
}
