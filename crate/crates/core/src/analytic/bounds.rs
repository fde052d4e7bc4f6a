//! High-MER lower and upper bounds of the form `c · λ^{-M N_d}`.
//!
//! Each bound replaces sums of gains by scaled maxima, then linearizes
//! `1 - e^{-x/σ²} ≈ x/σ²` for the main channel, which leaves moments of a
//! maximum of exponentials. In the coefficients below `s_A` is the sum of
//! `1/α_iej` over a non-empty subset `A` of wiretap links.
//!
//! The upper bound holds at every MER. The lower coefficient is exact only
//! asymptotically: the linearization overestimates the lower-bound event,
//! so where that event coincides with the exact one (single destination
//! and eavesdropper antenna) `c_low λ^{-M N_d}` sits slightly above the
//! exact probability at finite MER.

use alloc::format;
use alloc::vec::Vec;

use crate::analytic::order_stats::alternating_subset_sum_auto;
use crate::error::domain;
use crate::numerics::{ln_factorial, SignedLogValue};
use crate::{Error, Result, SystemConfig};

/// Coefficients of the asymptotic bounds `c_low λ^{-d} ≤ p ≤ c_up λ^{-d}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBoundPair {
    /// Lower coefficient `c_low`.
    pub lower_coeff: f64,
    /// Upper coefficient `c_up`.
    pub upper_coeff: f64,
    /// Decay exponent `d = M N_d`.
    pub exponent: u32,
}

impl AsymptoticBoundPair {
    fn from_logs(ln_lower: f64, ln_upper: f64, exponent: u32) -> Result<Self> {
        let lower_coeff = libm::exp(ln_lower);
        let upper_coeff = libm::exp(ln_upper);
        if !(lower_coeff > 0.0 && lower_coeff.is_finite() && upper_coeff.is_finite() && lower_coeff <= upper_coeff) {
            return Err(Error::Numerical(format!(
                "asymptotic bound coefficients out of order: lower {lower_coeff:e}, upper {upper_coeff:e}"
            )));
        }
        Ok(AsymptoticBoundPair { lower_coeff, upper_coeff, exponent })
    }

    /// `c_low λ^{-d}`.
    pub fn lower_at(&self, lambda: f64) -> f64 {
        libm::exp(libm::log(self.lower_coeff) - self.exponent as f64 * libm::log(lambda))
    }

    /// `c_up λ^{-d}`.
    pub fn upper_at(&self, lambda: f64) -> f64 {
        libm::exp(libm::log(self.upper_coeff) - self.exponent as f64 * libm::log(lambda))
    }
}

/// `ln Σ_{A≠∅} (-1)^{|A|+1} s_A^{-order}` over the given multipliers.
fn ln_alternating_power_sum(alpha: &[f64], order: u32) -> Result<f64> {
    let rates: Vec<f64> = alpha.iter().map(|a| 1.0 / a).collect();
    let k = order as f64;
    let (sum, _) = alternating_subset_sum_auto(&rates, |_, s| -k * libm::log(s))?;
    positive_log("alternating subset sum", sum)
}

fn positive_log(what: &str, v: SignedLogValue) -> Result<f64> {
    match v.sign() {
        crate::numerics::Sign::Positive => Ok(v.log_mag()),
        _ => Err(Error::Numerical(format!("{what} is not positive"))),
    }
}

fn ln_product(values: &[f64]) -> f64 {
    values.iter().map(|v| libm::log(*v)).sum()
}

fn validated(config: &SystemConfig) -> Result<()> {
    config.validate()
}

/// Space-time transmission, with `n = M N_d` and subsets over all `M N_e`
/// wiretap links:
///
/// * `c_low = Σ_A (-1)^{|A|+1} n! / ((n s_A)^n ∏ α_idj)`
/// * `c_up  = Σ_A (-1)^{|A|+1} (M N_e)^n n! / (s_A^n ∏ α_idj)`
pub fn stt_bounds_asymptotic(config: &SystemConfig) -> Result<AsymptoticBoundPair> {
    validated(config)?;
    let n = (config.m_tx * config.n_dest) as u32;
    let nf = n as f64;
    let ln_s = ln_alternating_power_sum(config.alpha_e.as_slice(), n)?;
    let common = ln_factorial(n as u64) + ln_s - ln_product(config.alpha_d.as_slice());
    let ln_lower = common - nf * libm::log(nf);
    let ln_upper = common + nf * libm::log((config.m_tx * config.n_eve) as f64);
    AsymptoticBoundPair::from_logs(ln_lower, ln_upper, n)
}

/// Optimal antenna selection: a product over antennas of per-antenna sums
/// over subsets `B` of that antenna's `N_e` wiretap links:
///
/// * `c_low = ∏_i Σ_B (-1)^{|B|+1} N_d! / ((N_d s_B)^{N_d} ∏_j α_idj)`
/// * `c_up  = ∏_i Σ_B (-1)^{|B|+1} N_e^{N_d} N_d! / (s_B^{N_d} ∏_j α_idj)`
pub fn oas_bounds_asymptotic(config: &SystemConfig) -> Result<AsymptoticBoundPair> {
    validated(config)?;
    let nd = config.n_dest as u32;
    let ndf = nd as f64;
    let mut ln_lower = 0.0;
    let mut ln_upper = 0.0;
    for i in 0..config.m_tx {
        let ln_s = ln_alternating_power_sum(config.alpha_e.row(i), nd)?;
        let common = ln_factorial(nd as u64) + ln_s - ln_product(config.alpha_d.row(i));
        ln_lower += common - ndf * libm::log(ndf);
        ln_upper += common + ndf * libm::log(config.n_eve as f64);
    }
    AsymptoticBoundPair::from_logs(ln_lower, ln_upper, (config.m_tx * config.n_dest) as u32)
}

/// Suboptimal antenna selection, taking antenna 0 as the reference for
/// the wiretap multipliers. See [`sas_bounds_with_reference`].
pub fn sas_bounds_asymptotic(config: &SystemConfig) -> Result<AsymptoticBoundPair> {
    sas_bounds_with_reference(config, 0)
}

/// Suboptimal antenna selection with `n = M N_d`, subsets `B` over the
/// reference antenna's `N_e` wiretap links:
///
/// * `c_low = Σ_B (-1)^{|B|+1} n! / ((N_d s_B)^n ∏ α_idj)`
/// * `c_up  = Σ_B (-1)^{|B|+1} N_e^n n! / (s_B^n ∏ α_idj)`
///
/// The SAS analysis treats the wiretap links of every antenna as
/// identically distributed, so the reference row only matters for
/// non-uniform `alpha_e`.
pub fn sas_bounds_with_reference(config: &SystemConfig, reference: usize) -> Result<AsymptoticBoundPair> {
    validated(config)?;
    if reference >= config.m_tx {
        return Err(domain!("reference antenna {reference} out of range for M = {}", config.m_tx));
    }
    let n = (config.m_tx * config.n_dest) as u32;
    let nf = n as f64;
    let ln_s = ln_alternating_power_sum(config.alpha_e.row(reference), n)?;
    let common = ln_factorial(n as u64) + ln_s - ln_product(config.alpha_d.as_slice());
    let ln_lower = common - nf * libm::log(config.n_dest as f64);
    let ln_upper = common + nf * libm::log(config.n_eve as f64);
    AsymptoticBoundPair::from_logs(ln_lower, ln_upper, n)
}
