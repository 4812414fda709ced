//! Sample covariance estimation and diagonal loading.

use crate::error::{MtiError, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::signal::TrainingSet;

/// Covariance estimate with a symbolically stored diagonal load.
///
/// The loading is kept separate from the entries so that many loading levels
/// can be tried against one estimate; [`CovarianceEstimate::effective`] folds
/// it in.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate {
    matrix: HermitianMatrix,
    sample_count: usize,
    loading: f64,
}

impl CovarianceEstimate {
    /// Wraps a known matrix, e.g. a true covariance, as an unloaded estimate.
    pub fn from_matrix(matrix: HermitianMatrix, sample_count: usize) -> Self {
        Self { matrix, sample_count, loading: 0.0 }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn loading(&self) -> f64 {
        self.loading
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Same estimate with loading `alpha` recorded.
    pub fn with_loading(&self, alpha: f64) -> Result<Self> {
        if alpha < 0.0 || alpha.is_nan() {
            return Err(MtiError::NegativeLoading(alpha));
        }
        Ok(Self { loading: alpha, ..self.clone() })
    }

    /// `R̂ + α·I` for the recorded loading.
    pub fn effective(&self) -> HermitianMatrix {
        if self.loading == 0.0 {
            self.matrix.clone()
        } else {
            self.matrix.add_diagonal(self.loading)
        }
    }
}

/// Maximum-likelihood estimate `X·Xᴴ/M`.
pub fn sample_covariance(x: &TrainingSet) -> CovarianceEstimate {
    let n = x.n();
    let mut acc = ComplexMatrix::zeros(n, n);
    for col in x.columns() {
        for i in 0..n {
            let ci = col[i];
            for j in 0..=i {
                acc[(i, j)] += ci * col[j].conj();
            }
        }
    }
    let inv_m = 1.0 / x.m() as f64;
    for i in 0..n {
        for j in 0..=i {
            let v = acc[(i, j)] * inv_m;
            acc[(i, j)] = v;
            acc[(j, i)] = v.conj();
        }
    }
    CovarianceEstimate { matrix: HermitianMatrix::symmetrized(acc), sample_count: x.m(), loading: 0.0 }
}
