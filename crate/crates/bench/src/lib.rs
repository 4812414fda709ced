//! Fixtures shared by the benchmarks.

use mti_core::{
    generate_training_set, sample_covariance, temporal_steering, ClutterCovariance, ClutterModel,
    CovarianceEstimate, EnvelopeLaw, HermitianMatrix, ToeplitzSpec, TrainingSet,
};

pub const PRF: f64 = 20_000.0;
pub const NOISE: f64 = 1e-7;

/// Two-mode temporal clutter scene of size `n` with `m = 2n` training snapshots.
pub struct Scene {
    pub toeplitz: ToeplitzSpec,
    pub covariance: HermitianMatrix,
    pub steering: Vec<mti_core::Complex64>,
    pub training: TrainingSet,
    pub estimate: CovarianceEstimate,
}

impl Scene {
    pub fn temporal(n: usize) -> Self {
        let model = ClutterModel::two_mode_temporal(n, 1e-3, NOISE, PRF);
        let ClutterCovariance::Toeplitz(t) = model.covariance() else { unreachable!("temporal model is Toeplitz") };
        let training = generate_training_set(&model, 2 * n, None, 7).expect("valid model");
        Scene {
            toeplitz: t.add_diagonal(NOISE),
            covariance: model.total_covariance(),
            steering: temporal_steering(n, 4000.0, PRF),
            estimate: sample_covariance(&training),
            training,
        }
    }
}

/// Spatial jammer scene used for the LMS benchmarks.
pub fn jammer_training(n: usize, m: usize) -> (Vec<mti_core::Complex64>, TrainingSet) {
    let model = ClutterModel::jammers(n, &[-14.0, 40.0], 200.0, 1.0, EnvelopeLaw::Gaussian);
    let training = generate_training_set(&model, m, None, 11).expect("valid model");
    (mti_core::spatial_steering(n, 5.0), training)
}
