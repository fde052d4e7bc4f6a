//! Seeded Monte Carlo estimation of zero-secrecy-capacity probabilities.
//!
//! A run of `n` samples split into `P` partitions gives partition `k` the
//! ChaCha8 stream `k` under a key derived from the master seed, and the
//! first `n mod P` partitions one extra sample. Counts are summed, so the
//! result depends only on `(seed, n, P)` and not on how partitions are
//! scheduled. [`estimate`] is the single-partition case.

use alloc::format;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::schemes::zero_secrecy_event;
use crate::{ChannelRealization, Error, Result, SchemeKind, SystemConfig};

/// Smallest accepted sample count.
pub const MIN_SAMPLES: u64 = 1000;

/// Two-sided 95% standard normal quantile.
const Z95: f64 = 1.959963984540054;

/// An empirical probability with its 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithCI {
    /// `n_events / n_samples`.
    pub p_hat: f64,
    /// Lower end of the interval.
    pub ci_low: f64,
    /// Upper end of the interval.
    pub ci_high: f64,
    /// Realizations drawn.
    pub n_samples: u64,
    /// Realizations with zero secrecy capacity.
    pub n_events: u64,
    /// Master seed.
    pub seed: u64,
}

impl EstimateWithCI {
    /// Builds the estimate and interval from raw counts.
    pub fn from_counts(n_events: u64, n_samples: u64, seed: u64) -> Result<Self> {
        if n_samples == 0 || n_events > n_samples {
            return Err(Error::Validation(format!(
                "invalid counts: {n_events} events in {n_samples} samples"
            )));
        }
        let p_hat = n_events as f64 / n_samples as f64;
        let (lo, hi) = wilson_interval(n_events, n_samples);
        Ok(EstimateWithCI {
            p_hat,
            ci_low: lo.min(p_hat),
            ci_high: hi.max(p_hat),
            n_samples,
            n_events,
            seed,
        })
    }

    /// Half the interval width.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }

    /// Whether `p` lies inside the interval.
    pub fn covers(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// 95% Wilson score interval for `k` successes in `n` trials, `n > 0`.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    let n_f = n as f64;
    let p = k as f64 / n_f;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n_f;
    let centre = (p + z2 / (2.0 * n_f)) / denom;
    let half = Z95 * libm::sqrt(p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)) / denom;
    let lo = if k == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if k == n { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// How channel gains are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FadingSampler {
    /// Exponential squared magnitudes, drawn directly.
    #[default]
    Exponential,
    /// Squared magnitudes of complex Gaussian coefficients.
    ComplexGaussian,
}

fn check_samples(n_samples: u64) -> Result<()> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::Validation(format!(
            "n_samples must be ≥ {MIN_SAMPLES}, got {n_samples}"
        )));
    }
    Ok(())
}

/// Samples assigned to partition `k` of `partitions`.
pub fn partition_len(n_samples: u64, partitions: u64, k: u64) -> u64 {
    n_samples / partitions + u64::from(k < n_samples % partitions)
}

/// Counts zero-secrecy events over `n` draws from stream `stream` of the
/// generator keyed by `seed`.
pub fn count_events(
    scheme: SchemeKind,
    config: &SystemConfig,
    n: u64,
    seed: u64,
    stream: u64,
    sampler: FadingSampler,
) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut real = ChannelRealization::zeros(config);
    let mut events = 0;
    for _ in 0..n {
        match sampler {
            FadingSampler::Exponential => real.resample(config, &mut rng),
            FadingSampler::ComplexGaussian => real.resample_complex_gaussian(config, &mut rng),
        }
        events += u64::from(zero_secrecy_event(scheme, config, &real));
    }
    events
}

/// Frequency of the zero-secrecy event over `n_samples` draws.
pub fn estimate(scheme: SchemeKind, config: &SystemConfig, n_samples: u64, seed: u64) -> Result<EstimateWithCI> {
    estimate_partitioned(scheme, config, n_samples, seed, 1)
}

/// [`estimate`] split into `partitions` independent substreams, run in
/// sequence.
pub fn estimate_partitioned(
    scheme: SchemeKind,
    config: &SystemConfig,
    n_samples: u64,
    seed: u64,
    partitions: u64,
) -> Result<EstimateWithCI> {
    estimate_with_sampler(scheme, config, n_samples, seed, partitions, FadingSampler::Exponential)
}

/// [`estimate_partitioned`] with an explicit fading sampler.
pub fn estimate_with_sampler(
    scheme: SchemeKind,
    config: &SystemConfig,
    n_samples: u64,
    seed: u64,
    partitions: u64,
    sampler: FadingSampler,
) -> Result<EstimateWithCI> {
    check_run(config, n_samples, partitions)?;
    let events = (0..partitions)
        .map(|k| count_events(scheme, config, partition_len(n_samples, partitions, k), seed, k, sampler))
        .sum();
    EstimateWithCI::from_counts(events, n_samples, seed)
}

/// Checks the arguments of a partitioned run.
pub fn check_run(config: &SystemConfig, n_samples: u64, partitions: u64) -> Result<()> {
    config.validate()?;
    check_samples(n_samples)?;
    if partitions == 0 || partitions > n_samples {
        return Err(Error::Validation(format!(
            "partitions must be in 1..={n_samples}, got {partitions}"
        )));
    }
    Ok(())
}

/// Mixes a master seed with a scheme and a grid index into a fresh seed.
pub fn derive_seed(seed: u64, scheme: SchemeKind, index: u64) -> u64 {
    let tag = match scheme {
        SchemeKind::Stt => 1u64,
        SchemeKind::Sas => 2,
        SchemeKind::Oas => 3,
    };
    splitmix(splitmix(seed ^ splitmix(tag)) ^ index)
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Samples needed for about 100 expected events at probability `p`.
pub fn required_samples(p: f64) -> Option<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return None;
    }
    let n = libm::ceil(100.0 / p);
    (n < u64::MAX as f64).then_some(n as u64)
}
