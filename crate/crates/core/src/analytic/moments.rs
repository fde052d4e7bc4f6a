//! Mean and second moment of `z = X_e / (M N_d σ²_idj)`, where `X_e` is
//! the strongest of all `M N_e` wiretap gains. Both vanish as the MER
//! grows, which is what justifies linearizing `1 - e^{-z}` in the bounds.

use alloc::vec::Vec;

use crate::analytic::order_stats::alternating_subset_sum_auto;
use crate::error::domain;
use crate::{Result, SystemConfig};

/// `(E z, E z²)` for destination link `(i, j)`, from
/// `E X_e = Σ_A (-1)^{|A|+1} / s_A` and `E X_e² = 2 Σ_A (-1)^{|A|+1} / s_A²`,
/// `s_A = Σ_{(i,j)∈A} 1/σ²_iej`.
pub fn theorem1_moments(config: &SystemConfig, i: usize, j: usize) -> Result<(f64, f64)> {
    config.validate()?;
    if i >= config.m_tx || j >= config.n_dest {
        return Err(domain!(
            "destination link ({i}, {j}) out of range for M = {}, N_d = {}",
            config.m_tx,
            config.n_dest
        ));
    }
    let rates: Vec<f64> = config.wiretap_means().as_slice().iter().map(|m| 1.0 / m).collect();
    let (first, _) = alternating_subset_sum_auto(&rates, |_, s| -libm::log(s))?;
    let (second, _) = alternating_subset_sum_auto(&rates, |_, s| -2.0 * libm::log(s))?;
    let scale = (config.m_tx * config.n_dest) as f64 * config.alpha_d.get(i, j) * config.sigma2_sd;
    Ok((first.to_f64() / scale, 2.0 * second.to_f64() / (scale * scale)))
}
