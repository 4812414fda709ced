use num_complex::Complex64;

use super::cholesky::CholeskyFactor;
use super::matrix::HermitianMatrix;
use super::vector;
use crate::direct::{AlgorithmTag, WeightVector};
use crate::error::{check_len, MtiError, Result};
use crate::signal::TrainingSet;

/// Loaded-SMI weights through the matrix inversion lemma:
/// `w = s − X·(XᴴX + M·α·I)⁻¹·Xᴴs`.
///
/// Only an `M×M` system is factored, which pays off when `M < N`. The result
/// is `M·α·(X·Xᴴ + M·α·I)⁻¹·s`, a positive multiple of the loaded-SMI weights.
pub fn hung_turner_weights(training: &TrainingSet, s: &[Complex64], alpha: f64) -> Result<WeightVector> {
    check_len(training.n(), s.len())?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(MtiError::InvalidParameter(format!("loading must be positive, got {alpha}")));
    }
    let m = training.m();
    let cols: Vec<&[Complex64]> = (0..m).map(|j| training.column(j)).collect();
    let gram = HermitianMatrix::symmetrized(crate::linalg::ComplexMatrix::from_fn(m, m, |i, j| {
        let v = vector::inner(cols[i], cols[j]);
        if i == j {
            v + m as f64 * alpha
        } else {
            v
        }
    }));
    let xs: Vec<Complex64> = cols.iter().map(|c| vector::inner(c, s)).collect();
    let y = CholeskyFactor::new(&gram).map_err(|_| MtiError::SingularSystem)?.solve(&xs)?;
    let mut w = s.to_vec();
    for (c, yj) in cols.iter().zip(&y) {
        vector::axpy(-*yj, c, &mut w);
    }
    WeightVector::new(w, AlgorithmTag::Rsmi)
}
