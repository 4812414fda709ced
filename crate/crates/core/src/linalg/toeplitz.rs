use num_complex::Complex64;

use super::cholesky::pivot_tolerance;
use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{MtiError, Result};

/// Hermitian Toeplitz matrix given by its first column `r[0..n]`, with
/// `r[-k] = conj(r[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec {
    first_column: Vec<Complex64>,
}

impl ToeplitzSpec {
    pub fn new(mut first_column: Vec<Complex64>) -> Result<Self> {
        let Some(r0) = first_column.first().copied() else {
            return Err(MtiError::InvalidParameter("empty Toeplitz column".into()));
        };
        if !super::vector::all_finite(&first_column) {
            return Err(MtiError::NonFinite("Toeplitz column"));
        }
        if r0.im.abs() > 1e-12 * r0.norm().max(f64::MIN_POSITIVE) {
            return Err(MtiError::InvalidParameter("r[0] of a Hermitian Toeplitz matrix must be real".into()));
        }
        first_column[0] = Complex64::new(r0.re, 0.0);
        Ok(Self { first_column })
    }

    pub fn dim(&self) -> usize {
        self.first_column.len()
    }

    pub fn first_column(&self) -> &[Complex64] {
        &self.first_column
    }

    /// Entry `(i, j)` of the implied matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        if i >= j {
            self.first_column[i - j]
        } else {
            self.first_column[j - i].conj()
        }
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        let n = self.dim();
        HermitianMatrix::symmetrized(ComplexMatrix::from_fn(n, n, |i, j| self.entry(i, j)))
    }

    /// `self + c·I`
    pub fn add_diagonal(&self, c: f64) -> Self {
        let mut col = self.first_column.clone();
        col[0] += c;
        Self { first_column: col }
    }
}

/// Outcome of the Levinson-Durbin recursion up to some order.
pub(crate) struct Levinson {
    /// Monic prediction-error filter `[1, a_1, …, a_p]`; `T·a = ρ·e₁`.
    pub a: Vec<Complex64>,
    /// Prediction error power after the last order.
    pub rho: f64,
    /// Reflection coefficients `a_l(l)` for `l = 1..=p`.
    pub reflections: Vec<Complex64>,
    /// Prediction error power for orders `0..=p`.
    pub errors: Vec<f64>,
}

pub(crate) fn levinson_durbin(t: &ToeplitzSpec, order: usize) -> Result<Levinson> {
    let r = t.first_column();
    debug_assert!(order < r.len());
    let tol = pivot_tolerance(r.len(), r[0].re.abs());
    let mut rho = r[0].re;
    if rho <= tol {
        return Err(MtiError::NotPositiveDefinite { step: 0, pivot: rho });
    }
    let mut a = vec![Complex64::ONE];
    let mut reflections = Vec::with_capacity(order);
    let mut errors = vec![rho];
    for l in 1..=order {
        let delta: Complex64 = (0..l).map(|j| r[l - j] * a[j]).sum();
        let k = -delta / rho;
        let mut next = Vec::with_capacity(l + 1);
        next.push(Complex64::ONE);
        for i in 1..l {
            next.push(a[i] + k * a[l - i].conj());
        }
        next.push(k);
        rho *= 1.0 - k.norm_sqr();
        if rho <= tol {
            return Err(MtiError::NotPositiveDefinite { step: l, pivot: rho });
        }
        a = next;
        reflections.push(k);
        errors.push(rho);
    }
    Ok(Levinson { a, rho, reflections, errors })
}

/// Dense inverse of a positive definite Hermitian Toeplitz matrix in `O(N²)`.
///
/// The recursion yields the first column `a/ρ` of the inverse; the last column
/// is its conjugate reversal, and the Gohberg–Semencul/Trench update fills the
/// interior from the border.
pub fn toeplitz_inverse(t: &ToeplitzSpec) -> Result<ComplexMatrix> {
    let n = t.dim();
    let Levinson { a, rho, .. } = levinson_durbin(t, n - 1)?;
    let b: Vec<Complex64> = a.iter().map(|z| z.conj()).collect();
    let mut inv = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        inv[(i, 0)] = a[i] / rho;
        inv[(0, i)] = b[i] / rho;
    }
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            inv[(i + 1, j + 1)] = inv[(i, j)] + (a[i + 1] * b[j + 1] - b[n - 1 - i] * a[n - 1 - j]) / rho;
        }
    }
    Ok(inv)
}
