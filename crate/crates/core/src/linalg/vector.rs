//! Small helpers on complex slices.

use num_complex::Complex64;

/// Inner product `aᴴb`.
#[inline]
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
pub fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

#[inline]
pub fn norm(a: &[Complex64]) -> f64 {
    norm_sqr(a).sqrt()
}

/// `y += c·x`
#[inline]
pub fn axpy(c: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

pub fn scaled(a: &[Complex64], c: Complex64) -> Vec<Complex64> {
    a.iter().map(|z| z * c).collect()
}

pub fn all_finite(a: &[Complex64]) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Angle in radians between two complex directions, insensitive to a common
/// phase. Uses the chord between the phase-aligned unit vectors, which stays
/// accurate for tiny angles.
pub fn angle_between(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ab = inner(a, b);
    let phase = if ab == Complex64::ZERO { Complex64::ONE } else { ab / ab.norm() };
    let (na, nb) = (norm(a), norm(b));
    let chord = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x * phase / na - y / nb).norm_sqr())
        .sum::<f64>()
        .sqrt();
    2.0 * (chord / 2.0).min(1.0).asin()
}
