//! Closed-form weights: optimal, SMI, loaded SMI, Gram-Schmidt whitening and
//! the detection statistic.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::covariance::{sample_covariance, CovarianceEstimate};
use crate::error::{check_len, MtiError, Result};
use crate::linalg::{solve_hermitian, vector, CholeskyFactor, ComplexMatrix, HermitianMatrix};
use crate::signal::{Snapshot, TrainingSet};

/// Algorithm that produced a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlgorithmTag {
    Optimal,
    Smi,
    Rsmi,
    FrostLms,
    QuadLms,
    Lms,
    Nlms,
    Rls,
    Mem,
}

impl AlgorithmTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Optimal => "OPTIMAL",
            Self::Smi => "SMI",
            Self::Rsmi => "RSMI",
            Self::FrostLms => "FROST_LMS",
            Self::QuadLms => "QUAD_LMS",
            Self::Lms => "LMS",
            Self::Nlms => "NLMS",
            Self::Rls => "RLS",
            Self::Mem => "MEM",
        }
    }
}

impl fmt::Display for AlgorithmTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Filter weights tagged with the algorithm that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    values: Vec<Complex64>,
    tag: AlgorithmTag,
}

impl WeightVector {
    pub fn new(values: Vec<Complex64>, tag: AlgorithmTag) -> Result<Self> {
        if !vector::all_finite(&values) {
            return Err(MtiError::NonFinite("weight vector"));
        }
        Ok(Self { values, tag })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn tag(&self) -> AlgorithmTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { values: vector::scaled(&self.values, c), tag: self.tag }
    }
}

impl AsRef<[Complex64]> for WeightVector {
    fn as_ref(&self) -> &[Complex64] {
        &self.values
    }
}

/// `w = R⁻¹·s` for a known covariance.
pub fn optimal_weights(r: &HermitianMatrix, s: &[Complex64]) -> Result<WeightVector> {
    WeightVector::new(solve_hermitian(r, s)?, AlgorithmTag::Optimal)
}

/// `w = R̂⁻¹·s`; needs a non-singular estimate (generically `M ≥ N`).
pub fn smi_weights(x: &TrainingSet, s: &[Complex64]) -> Result<WeightVector> {
    estimate_weights(&sample_covariance(x), s, AlgorithmTag::Smi)
}

/// `w = (R̂ + α·I)⁻¹·s`
pub fn rsmi_weights(x: &TrainingSet, s: &[Complex64], alpha: f64) -> Result<WeightVector> {
    if !(alpha > 0.0) {
        return Err(MtiError::InvalidParameter(format!("loading must be positive, got {alpha}")));
    }
    estimate_weights(&sample_covariance(x).with_loading(alpha)?, s, AlgorithmTag::Rsmi)
}

/// Solves against the effective (loaded) matrix of an estimate.
pub fn estimate_weights(est: &CovarianceEstimate, s: &[Complex64], tag: AlgorithmTag) -> Result<WeightVector> {
    check_len(est.dim(), s.len())?;
    WeightVector::new(solve_hermitian(&est.effective(), s)?, tag)
}

/// Lower-triangular `T = L⁻¹` with `L` the Cholesky factor of `r`, so that
/// `T·r·Tᴴ = I` and `T·x` whitens snapshots of covariance `r`.
pub fn gram_schmidt_whitener(r: &HermitianMatrix) -> Result<ComplexMatrix> {
    Ok(CholeskyFactor::new(r)?.inverse_lower())
}

/// Detection statistic `wᴴ·x`.
pub fn test_statistic(w: &WeightVector, x: &Snapshot) -> Result<Complex64> {
    check_len(w.len(), x.len())?;
    Ok(vector::inner(w.values(), x))
}
