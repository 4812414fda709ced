//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use mti_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cn(rng: &mut impl Rng) -> C {
    let re: f64 = rng.sample(rand_distr::StandardNormal);
    let im: f64 = rng.sample(rand_distr::StandardNormal);
    C::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_vec(rng: &mut impl Rng, n: usize) -> Vec<C> {
    (0..n).map(|_| cn(rng)).collect()
}

/// Row-major dense square matrix.
pub fn dense(n: usize, f: impl Fn(usize, usize) -> C) -> Vec<Vec<C>> {
    (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
}

/// `A·Aᴴ + d·I` for a random `A`.
pub fn random_pd(rng: &mut impl Rng, n: usize, d: f64) -> Vec<Vec<C>> {
    let a: Vec<Vec<C>> = (0..n).map(|_| random_vec(rng, n)).collect();
    dense(n, |i, j| {
        let mut acc: C = (0..n).map(|k| a[i][k] * a[j][k].conj()).sum();
        if i == j {
            acc += d;
        }
        acc
    })
}

/// First column of a positive definite Hermitian Toeplitz matrix: a few
/// random spectral lines over a white floor.
pub fn random_pd_toeplitz(rng: &mut impl Rng, n: usize) -> Vec<C> {
    let lines: Vec<(f64, f64)> = (0..rng.random_range(1..5))
        .map(|_| (rng.random_range(0.1..10.0), rng.random_range(-3.14..3.14)))
        .collect();
    let floor = rng.random_range(0.05..1.0);
    (0..n)
        .map(|k| {
            let mut r: C = lines.iter().map(|(p, w)| C::from_polar(*p, w * k as f64)).sum();
            if k == 0 {
                r += floor;
            }
            r
        })
        .collect()
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn gauss_inverse(a: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let mut m: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::ONE } else { C::ZERO }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm())).unwrap();
        m.swap(col, p);
        let piv = m[col][col];
        for v in m[col].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != C::ZERO {
                    for c in 0..2 * n {
                        let sub = f * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn mat_vec(a: &[Vec<C>], x: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

pub fn mat_mul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().enumerate().map(|(k, v)| v * b[k][j]).sum()).collect())
        .collect()
}

pub fn adjoint(a: &[Vec<C>]) -> Vec<Vec<C>> {
    dense(a[0].len(), |i, j| a[j][i].conj())
}

pub fn max_abs_diff(a: &[Vec<C>], b: &[Vec<C>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[Vec<C>]) -> f64 {
    a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Angle between two complex directions up to a common phase, from the
/// residual of projecting `b` onto `a`.
pub fn direction_angle(a: &[C], b: &[C]) -> f64 {
    let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let ab: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let c = ab / aa;
    let resid: f64 = a.iter().zip(b).map(|(x, y)| (y - c * x).norm_sqr()).sum::<f64>().sqrt();
    resid.atan2((c * aa.sqrt()).norm())
}

/// `|wᴴs|² / wᴴRw` with plain loops.
pub fn sinr(w: &[C], s: &[C], r: &[Vec<C>]) -> f64 {
    let ws: C = w.iter().zip(s).map(|(a, b)| a.conj() * b).sum();
    let rw = mat_vec(r, w);
    let q: C = w.iter().zip(&rw).map(|(a, b)| a.conj() * b).sum();
    ws.norm_sqr() / q.re
}
