//! Stable per-trial seed derivation.

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one Monte-Carlo trial. Depends only on its arguments, so trials
/// can run in any order or in separate processes.
pub fn trial_seed(base_seed: u64, scenario: u64, n: usize, sweep: usize, trial: usize) -> u64 {
    [scenario, n as u64, sweep as u64, trial as u64]
        .into_iter()
        .fold(splitmix64(base_seed), |h, v| splitmix64(h ^ v))
}
