mod common;

use common::*;
use mti_core::linalg::vector::norm;
use mti_core::prelude::*;
use proptest::prelude::*;

fn herm(a: &[Vec<C>]) -> HermitianMatrix {
    let n = a.len();
    HermitianMatrix::new(ComplexMatrix::from_fn(n, n, |i, j| a[i][j])).unwrap()
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<C>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn frob(a: &[Vec<C>]) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn frob_diff(a: &[Vec<C>], b: &[Vec<C>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn toeplitz_dense(col: &[C]) -> Vec<Vec<C>> {
    dense(col.len(), |i, j| if i >= j { col[i - j] } else { col[j - i].conj() })
}

#[test]
fn cholesky_small_cases() {
    let l = cholesky_lower(&HermitianMatrix::identity(3)).unwrap();
    assert_eq!(rows(&l), dense(3, |i, j| if i == j { C::ONE } else { C::ZERO }));
    let d = herm(&dense(2, |i, j| if i != j { C::ZERO } else if i == 0 { C::new(4.0, 0.0) } else { C::new(9.0, 0.0) }));
    let l = cholesky_lower(&d).unwrap();
    assert_eq!(l[(0, 0)], C::new(2.0, 0.0));
    assert_eq!(l[(1, 1)], C::new(3.0, 0.0));
    assert_eq!(l[(1, 0)], C::ZERO);
}

#[test]
fn cholesky_reconstructs_random_pd() {
    let mut rng = rng(1);
    for n in [1, 2, 8, 33, 128] {
        let a = random_pd(&mut rng, n, 0.1);
        let l = cholesky_lower(&herm(&a)).unwrap();
        assert!(l.is_lower_triangular());
        let l = rows(&l);
        let back = mat_mul(&l, &adjoint(&l));
        assert!(frob_diff(&back, &a) <= 1e-10 * frob(&a), "n = {n}");
    }
}

#[test]
fn cholesky_rejects_indefinite_and_singular() {
    let a = herm(&dense(2, |i, j| if i == j { C::ONE } else { C::new(2.0, 0.0) }));
    assert!(matches!(cholesky_lower(&a), Err(MtiError::NotPositiveDefinite { .. })));
    let v = [C::ONE, C::new(0.0, 1.0), C::new(2.0, -1.0)];
    let rank_one = herm(&dense(3, |i, j| v[i] * v[j].conj()));
    assert!(matches!(solve_hermitian(&rank_one, &v), Err(MtiError::NotPositiveDefinite { .. })));
}

#[test]
fn solve_hermitian_matches_gauss_oracle() {
    let eye = HermitianMatrix::identity(4);
    let b = vec![C::new(1.0, 2.0), C::new(-3.0, 0.5), C::ZERO, C::ONE];
    assert_eq!(solve_hermitian(&eye, &b).unwrap(), b);
    let two = HermitianMatrix::scaled_identity(2, 2.0);
    let x = solve_hermitian(&two, &[C::ONE, C::ONE]).unwrap();
    assert!(x.iter().all(|z| (z - 0.5).norm() < 1e-15));

    let mut rng = rng(2);
    let a = random_pd(&mut rng, 16, 0.5);
    let b = random_vec(&mut rng, 16);
    let x = solve_hermitian(&herm(&a), &b).unwrap();
    let reference = mat_vec(&gauss_inverse(&a), &b);
    let resid: Vec<C> = mat_vec(&a, &x).iter().zip(&b).map(|(p, q)| p - q).collect();
    assert!(norm(&resid) <= 1e-10 * norm(&b));
    let err: f64 = x.iter().zip(&reference).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
    assert!(err <= 1e-10 * norm(&reference));
}

#[test]
fn solve_rejects_wrong_length() {
    let eye = HermitianMatrix::identity(3);
    assert!(matches!(solve_hermitian(&eye, &[C::ONE]), Err(MtiError::DimensionMismatch { .. })));
}

#[test]
fn hermitian_matrix_rejects_asymmetry_and_nan() {
    let m = ComplexMatrix::from_fn(2, 2, |i, j| if i < j { C::ONE } else { C::ZERO });
    assert!(HermitianMatrix::new(m).is_err());
    assert!(ComplexMatrix::new(1, 1, vec![C::new(f64::NAN, 0.0)]).is_err());
    assert!(ComplexMatrix::new(2, 2, vec![C::ONE; 3]).is_err());
}

#[test]
fn toeplitz_small_cases() {
    let one = toeplitz_inverse(&ToeplitzSpec::new(vec![C::ONE]).unwrap()).unwrap();
    assert!((one[(0, 0)] - 1.0).norm() < 1e-15);
    let inv = toeplitz_inverse(&ToeplitzSpec::new(vec![C::new(2.0, 0.0), C::ONE]).unwrap()).unwrap();
    let expect = [[2.0 / 3.0, -1.0 / 3.0], [-1.0 / 3.0, 2.0 / 3.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((inv[(i, j)] - expect[i][j]).norm() < 1e-14);
        }
    }
}

#[test]
fn toeplitz_inverse_matches_oracle_and_inverts() {
    let mut rng = rng(3);
    for n in 2..=64 {
        let col = random_pd_toeplitz(&mut rng, n);
        let inv = rows(&toeplitz_inverse(&ToeplitzSpec::new(col.clone()).unwrap()).unwrap());
        let t = toeplitz_dense(&col);
        let reference = gauss_inverse(&t);
        assert!(frob_diff(&inv, &reference) <= 1e-9 * frob(&reference), "n = {n}");
        let eye = dense(n, |i, j| if i == j { C::ONE } else { C::ZERO });
        assert!(max_abs_diff(&mat_mul(&inv, &t), &eye) <= 1e-9, "n = {n}");
        for i in 0..n {
            for j in 0..n {
                // Hermitian and persymmetric (no conjugate for complex entries)
                assert!((inv[i][j] - inv[j][i].conj()).norm() <= 1e-9 * max_abs(&inv));
                assert!((inv[i][j] - inv[n - 1 - j][n - 1 - i]).norm() <= 1e-9 * max_abs(&inv));
            }
        }
    }
}

#[test]
fn toeplitz_inverse_rejects_non_pd() {
    let t = ToeplitzSpec::new(vec![C::ONE, C::new(2.0, 0.0)]).unwrap();
    assert!(matches!(toeplitz_inverse(&t), Err(MtiError::NotPositiveDefinite { .. })));
}

#[test]
fn hung_turner_cases() {
    let s = vec![C::ONE, C::new(0.0, 1.0), C::new(-1.0, 0.0)];
    let zeros = TrainingSet::from_columns(&[vec![C::ZERO; 3], vec![C::ZERO; 3]], 0).unwrap();
    let w = hung_turner_weights(&zeros, &s, 0.3).unwrap();
    assert!(w.values().iter().zip(&s).all(|(a, b)| (a - b).norm() < 1e-15));

    let unit: Vec<C> = s.iter().map(|z| z / 3f64.sqrt()).collect();
    let x = TrainingSet::from_columns(&[unit.clone()], 0).unwrap();
    let w = hung_turner_weights(&x, &unit, 1.0).unwrap();
    assert!(w.values().iter().zip(&unit).all(|(a, b)| (a - b / 2.0).norm() < 1e-15));

    let mut rng = rng(4);
    let cols: Vec<Vec<C>> = (0..4).map(|_| random_vec(&mut rng, 8)).collect();
    let s = random_vec(&mut rng, 8);
    let alpha = 0.7;
    let w = hung_turner_weights(&TrainingSet::from_columns(&cols, 0).unwrap(), &s, alpha).unwrap();
    let loaded = dense(8, |i, j| {
        let v = cols.iter().map(|c| c[i] * c[j].conj()).sum::<C>() / 4.0;
        if i == j {
            v + alpha
        } else {
            v
        }
    });
    let reference = mat_vec(&gauss_inverse(&loaded), &s);
    assert!(direction_angle(&reference, w.values()) < 1e-8);
    // positive real factor α
    let ratio = w.values()[0] / reference[0];
    assert!((ratio - alpha).norm() < 1e-9 * ratio.norm());
    assert_eq!(w.tag(), AlgorithmTag::Rsmi);
}

#[test]
fn hung_turner_rejects_non_positive_alpha() {
    let x = TrainingSet::from_columns(&[vec![C::ONE; 2]], 0).unwrap();
    assert!(hung_turner_weights(&x, &[C::ONE; 2], 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cholesky_solve_residual(seed in any::<u64>(), n in 1usize..24, d in 0.01f64..10.0) {
        let mut r = rng(seed);
        let a = random_pd(&mut r, n, d);
        let b = random_vec(&mut r, n);
        let x = solve_hermitian(&herm(&a), &b).unwrap();
        let resid: Vec<C> = mat_vec(&a, &x).iter().zip(&b).map(|(p, q)| p - q).collect();
        prop_assert!(norm(&resid) <= 1e-10 * norm(&b) * (1.0 + max_abs(&a) / d));
    }

    #[test]
    fn toeplitz_inverse_is_inverse(seed in any::<u64>(), n in 1usize..40) {
        let mut r = rng(seed);
        let col = random_pd_toeplitz(&mut r, n);
        let inv = rows(&toeplitz_inverse(&ToeplitzSpec::new(col.clone()).unwrap()).unwrap());
        let eye = dense(n, |i, j| if i == j { C::ONE } else { C::ZERO });
        prop_assert!(max_abs_diff(&mat_mul(&toeplitz_dense(&col), &inv), &eye) <= 1e-8);
    }

    #[test]
    fn hung_turner_direction(seed in any::<u64>(), n in 2usize..20, m in 1usize..20, alpha in 1e-3f64..10.0) {
        let mut r = rng(seed);
        let cols: Vec<Vec<C>> = (0..m).map(|_| random_vec(&mut r, n)).collect();
        let s = random_vec(&mut r, n);
        let w = hung_turner_weights(&TrainingSet::from_columns(&cols, 0).unwrap(), &s, alpha).unwrap();
        let est = sample_covariance(&TrainingSet::from_columns(&cols, 0).unwrap());
        let reference = rsmi_weights(&TrainingSet::from_columns(&cols, 0).unwrap(), &s, alpha).unwrap();
        prop_assert_eq!(est.dim(), n);
        prop_assert!(direction_angle(reference.values(), w.values()) < 1e-8);
    }
}
