//! Adaptive moving-target-indication weight computation.
//!
//! The crate covers the whole processing chain of an adaptive MTI/STAP
//! simulator: dense and Toeplitz complex linear algebra, Gaussian-spectrum
//! clutter and jammer models, sample covariance estimation with diagonal
//! loading, closed-form and iterative weight solvers (including an iterative
//! optimizer for the loading level and a quadratically constrained LMS),
//! maximum-entropy AR whitening, quality metrics and a Monte-Carlo harness.
//!
//! ```
//! use mti_core::prelude::*;
//!
//! let model = ClutterModel::two_mode_temporal(8, 1.0, 1e-3, 20_000.0);
//! let r = model.covariance().with_noise(model.noise_power);
//! let s = temporal_steering(8, 4_000.0, 20_000.0);
//! let w = optimal_weights(&r, &s).unwrap();
//! let sinr = output_sinr(&w, &s, &r).unwrap();
//! assert!(sinr > 30.0);
//! ```

pub mod adaptive;
pub mod alpha;
pub mod covariance;
pub mod direct;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod mem;
pub mod metrics;
pub mod signal;

pub use num_complex::Complex64;

pub use adaptive::{
    steering_mean_closed_form, steering_mean_direct, FrostState, LmsState, NlmsState, InitialWeights,
    QuadLmsState, RlsState,
};
pub use alpha::{alpha_update, lambda_of, optimize_loading, AlphaIteration, LoadingOptimizer, LoadingSolution};
pub use covariance::{sample_covariance, CovarianceEstimate};
pub use direct::{
    gram_schmidt_whitener, optimal_weights, rsmi_weights, smi_weights, test_statistic, AlgorithmTag,
    WeightVector,
};
pub use error::{MtiError, Result};
pub use linalg::{
    cholesky_lower, hung_turner_weights, solve_hermitian, toeplitz_inverse, CholeskyFactor,
    ComplexMatrix, HermitianMatrix, ToeplitzSpec,
};
pub use mem::{burg_estimate, mem_psd, prediction_error_filter, spectral_flatness, yule_walker, ArModel};
pub use metrics::{
    beampattern, clutter_attenuation, improvement_factor, normalized_beampattern, observability,
    output_sinr, pattern_gain, sinr_linear, subclutter_visibility, PatternGrid,
};
pub use signal::{
    clutter_covariance, doppler_shift, generate_training_set, spatial_steering, temporal_steering,
    AmplitudeLaw, ClutterCovariance, ClutterMode, ClutterModel, Domain, EnvelopeLaw, Snapshot,
    TargetSpec, TrainingSet,
};

/// Everything needed for typical use in one import.
pub mod prelude {
    pub use crate::adaptive::*;
    pub use crate::alpha::*;
    pub use crate::covariance::*;
    pub use crate::direct::*;
    pub use crate::error::*;
    pub use crate::linalg::*;
    pub use crate::mem::*;
    pub use crate::metrics::*;
    pub use crate::signal::*;
    pub use num_complex::Complex64;
}
