use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{check_len, MtiError, Result};

/// Pivot threshold shared by the strict factorizations: `dim·1e-14·max|diag|`.
pub(crate) fn pivot_tolerance(dim: usize, max_diag: f64) -> f64 {
    dim as f64 * 1e-14 * max_diag
}

/// Lower Cholesky factor `L` with `L·Lᴴ = A`, kept for repeated solves.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    n: usize,
    l: Vec<Complex64>,
}

impl CholeskyFactor {
    pub fn new(m: &HermitianMatrix) -> Result<Self> {
        let n = m.dim();
        let tol = pivot_tolerance(n, m.max_abs_diagonal());
        let l = factor(m.as_slice(), n, |step, pivot| {
            if pivot > tol {
                Ok(pivot.sqrt())
            } else {
                Err(MtiError::NotPositiveDefinite { step, pivot })
            }
        })?;
        Ok(Self { n, l })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> ComplexMatrix {
        ComplexMatrix::new(self.n, self.n, self.l.clone()).expect("factor entries are finite")
    }

    /// Solves `L·y = b`.
    pub fn solve_lower(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        check_len(self.n, b.len())?;
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let acc: Complex64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - acc) / self.l[i * n + i].re;
        }
        Ok(y)
    }

    /// Solves `Lᴴ·x = y`.
    pub fn solve_upper(&self, y: &[Complex64]) -> Result<Vec<Complex64>> {
        check_len(self.n, y.len())?;
        let n = self.n;
        let mut x = y.to_vec();
        for i in (0..n).rev() {
            x[i] /= self.l[i * n + i].re;
            let xi = x[i];
            for (xk, lik) in x[..i].iter_mut().zip(&self.l[i * n..i * n + i]) {
                *xk -= lik.conj() * xi;
            }
        }
        Ok(x)
    }

    /// Solves `A·x = b`.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        self.solve_upper(&self.solve_lower(b)?)
    }

    /// `L⁻¹`, lower triangular.
    pub fn inverse_lower(&self) -> ComplexMatrix {
        let n = self.n;
        let mut t = ComplexMatrix::zeros(n, n);
        let mut e = vec![Complex64::ZERO; n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = Complex64::ZERO);
            e[j] = Complex64::ONE;
            let col = self.solve_lower(&e).expect("length matches");
            for (i, v) in col.into_iter().enumerate().skip(j) {
                t[(i, j)] = v;
            }
        }
        t
    }
}

/// Row-oriented Cholesky–Banachiewicz; `pivot` maps each reduced diagonal
/// entry to the diagonal of `L` (zero means "drop this direction").
fn factor(
    a: &[Complex64],
    n: usize,
    mut pivot: impl FnMut(usize, f64) -> Result<f64>,
) -> Result<Vec<Complex64>> {
    let mut l = vec![Complex64::ZERO; n * n];
    for i in 0..n {
        let (head, tail) = l.split_at_mut(i * n);
        let row_i = &mut tail[..n];
        for j in 0..i {
            let row_j = &head[j * n..j * n + n];
            let djj = row_j[j].re;
            if djj == 0.0 {
                continue;
            }
            let acc: Complex64 = row_i[..j].iter().zip(&row_j[..j]).map(|(a, b)| a * b.conj()).sum();
            row_i[j] = (a[i * n + j] - acc) / djj;
        }
        let d = a[i * n + i].re - row_i[..i].iter().map(|z| z.norm_sqr()).sum::<f64>();
        row_i[i] = Complex64::new(pivot(i, d)?, 0.0);
    }
    Ok(l)
}

/// Lower-triangular `L` with `L·Lᴴ = m`.
pub fn cholesky_lower(m: &HermitianMatrix) -> Result<ComplexMatrix> {
    Ok(CholeskyFactor::new(m)?.lower())
}

/// Lower-triangular factor of a positive semidefinite matrix.
///
/// Pivots at or below `dim·1e-14·max|diag|` are treated as exact zeros and
/// their column is dropped, so rank-deficient covariances still yield a
/// usable coloring transform `L` with `L·Lᴴ ≈ m`.
pub fn psd_factor(m: &HermitianMatrix) -> ComplexMatrix {
    let n = m.dim();
    let tol = pivot_tolerance(n, m.max_abs_diagonal());
    let l = factor(m.as_slice(), n, |_, d| Ok(if d > tol { d.sqrt() } else { 0.0 }))
        .expect("semidefinite factorization never fails");
    ComplexMatrix::new(n, n, l).expect("factor entries are finite")
}

/// Solves `m·x = b` for Hermitian positive definite `m`.
pub fn solve_hermitian(m: &HermitianMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(m.dim(), b.len())?;
    CholeskyFactor::new(m)?.solve(b)
}
