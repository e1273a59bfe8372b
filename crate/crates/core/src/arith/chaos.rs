use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::BernoulliParams;
use crate::error::{Error, Result};

/// Monte-Carlo estimate of μ̂(t) with its sample standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChaosEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl ChaosEstimate {
    /// |estimate − value| in units of the standard error (∞ if the error is 0
    /// and the values differ).
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = (self.estimate - value).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

/// Number of random digits after which λ^k drops below double precision.
fn digits_needed(params: BernoulliParams) -> u32 {
    let bits_per_digit = (2.0 * params.n() as f64).log2();
    ((54.0 / bits_per_digit).ceil() as u32 + 1).min(64)
}

/// Estimates μ̂(t) = E[cos(2π t X)] with X = Σ_{k≥1} ε_k λ^k, ε_k = ±1 i.i.d.
///
/// X is a chaos-game sample of μ: each digit picks one of the two maps
/// x ↦ λ(x ± 1). The series is cut where λ^k falls below machine precision.
/// The sine part integrates to zero by symmetry and is not sampled.
pub fn chaos_game_estimate(
    t: f64,
    params: BernoulliParams,
    samples: u64,
    seed: u64,
) -> Result<ChaosEstimate> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    if !t.is_finite() {
        return Err(Error::NonFinite(t));
    }
    let lambda = params.lambda();
    let digits = digits_needed(params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Welford running mean / variance
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for i in 0..samples {
        let bits: u64 = rng.gen();
        // Horner from the deepest digit: x = λ(ε₁ + λ(ε₂ + …))
        let mut x = 0.0f64;
        for k in (0..digits).rev() {
            let eps = if (bits >> k) & 1 == 1 { 1.0 } else { -1.0 };
            x = lambda * (eps + x);
        }
        let y = (std::f64::consts::TAU * t * x).cos();
        let delta = y - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (y - mean);
    }
    let variance = if samples > 1 {
        m2 / (samples - 1) as f64
    } else {
        0.0
    };
    Ok(ChaosEstimate {
        estimate: mean,
        std_error: (variance / samples as f64).sqrt(),
        samples,
    })
}
