use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::vector;
use crate::error::{check_len, MtiError, Result};

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(MtiError::InvalidParameter("matrix dimensions must be positive".into()));
        }
        check_len(rows * cols, data.len())?;
        if !vector::all_finite(&data) {
            return Err(MtiError::NonFinite("matrix entries"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        for c in columns {
            check_len(rows, c.len())?;
        }
        let data = (0..rows).flat_map(|i| columns.iter().map(move |c| c[i])).collect();
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_len(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if *a != Complex64::ZERO {
                    vector::axpy(*a, other.row(k), out_row);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        check_len(self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: vector::scaled(&self.data, c) }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn frobenius_norm(&self) -> f64 {
        vector::norm(&self.data)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == Complex64::ZERO))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Square matrix that is Hermitian to working precision.
///
/// Construction checks the symmetry to 1e-12 relative to the largest entry
/// and then stores the exactly symmetrized matrix with a real diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    const SYMMETRY_TOL: f64 = 1e-12;

    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(MtiError::DimensionMismatch { expected: m.rows, found: m.cols });
        }
        let n = m.rows;
        let scale = m.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tol = Self::SYMMETRY_TOL * scale.max(f64::MIN_POSITIVE);
        for i in 0..n {
            for j in 0..=i {
                if (m[(i, j)] - m[(j, i)].conj()).norm() > tol {
                    return Err(MtiError::InvalidParameter(format!(
                        "matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::symmetrized(m))
    }

    /// Builds `(m + mᴴ)/2` without checking; useful when `m` is Hermitian by construction.
    pub(crate) fn symmetrized(mut m: ComplexMatrix) -> Self {
        let n = m.rows;
        for i in 0..n {
            m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in 0..i {
                let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn scaled_identity(n: usize, c: f64) -> Self {
        Self(ComplexMatrix::identity(n).scale(Complex64::new(c, 0.0)))
    }

    /// `Σ p_l·v_l·v_lᴴ`
    pub fn from_outer_products<'a>(
        n: usize,
        terms: impl IntoIterator<Item = (f64, &'a [Complex64])>,
    ) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(n, n);
        for (p, v) in terms {
            check_len(n, v.len())?;
            for i in 0..n {
                let c = v[i] * p;
                for j in 0..=i {
                    m.data[i * n + j] += c * v[j].conj();
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                m.data[j * n + i] = m.data[i * n + j].conj();
            }
        }
        Ok(Self::symmetrized(m))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0.data
    }

    pub fn max_abs_diagonal(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re.abs()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    /// `self + alpha·I`
    pub fn add_diagonal(&self, alpha: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..self.dim() {
            m[(i, i)] += alpha;
        }
        Self(m)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_len(self.dim(), other.dim())?;
        let data = self.0.data.iter().zip(&other.0.data).map(|(a, b)| a + b).collect();
        Ok(Self(ComplexMatrix { rows: self.0.rows, cols: self.0.cols, data }))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.scale(Complex64::new(c, 0.0)))
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.0.mul_vec(x)
    }

    /// Real quadratic form `xᴴ·self·x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<f64> {
        check_len(self.dim(), x.len())?;
        let mut acc = 0.0;
        for (i, xi) in x.iter().enumerate() {
            let row: Complex64 = self.0.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
            acc += (xi.conj() * row).re;
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}
