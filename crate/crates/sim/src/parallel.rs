//! Multi-threaded driver for partitioned Monte Carlo runs.

use rayon::prelude::*;
use secrecy_core::montecarlo::{check_run, count_events, partition_len, FadingSampler};
use secrecy_core::{EstimateWithCI, Result, SchemeKind, SystemConfig};

/// Same result as `montecarlo::estimate_with_sampler`, with partitions
/// spread over the rayon pool.
pub fn estimate_parallel(
    scheme: SchemeKind,
    config: &SystemConfig,
    n_samples: u64,
    seed: u64,
    partitions: u64,
    sampler: FadingSampler,
) -> Result<EstimateWithCI> {
    check_run(config, n_samples, partitions)?;
    let events = (0..partitions)
        .into_par_iter()
        .map(|k| count_events(scheme, config, partition_len(n_samples, partitions, k), seed, k, sampler))
        .sum();
    EstimateWithCI::from_counts(events, n_samples, seed)
}
