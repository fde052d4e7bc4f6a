//! Distribution of the maximum of independent exponential variables by
//! inclusion–exclusion over non-empty subsets.

use alloc::vec::Vec;

use crate::analytic::finish_probability;
use crate::error::domain;
use crate::numerics::{ln_factorial, log_binomial, signed_logsum_with_gross, Sign, SignedLogValue};
use crate::{Error, Result};

/// Maximum number of elements enumerated subset by subset (about a million
/// subsets).
pub const SUBSET_CAP: usize = 20;

/// `Σ_{A ≠ ∅} (-1)^{|A|+1} exp(log_term(|A|, Σ_{k∈A} rates[k]))`,
/// enumerating every subset.
pub(crate) fn alternating_subset_sum<F>(rates: &[f64], log_term: F) -> Result<(SignedLogValue, f64)>
where
    F: Fn(usize, f64) -> f64,
{
    let n = rates.len();
    if n > SUBSET_CAP {
        return Err(Error::Capacity { n, cap: SUBSET_CAP });
    }
    let log_term = &log_term;
    let terms = (1u32..(1u32 << n)).map(move |mask| {
        let mut sum = 0.0;
        let mut bits = mask;
        while bits != 0 {
            sum += rates[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        let size = mask.count_ones() as usize;
        SignedLogValue::new(Sign::parity(size + 1), log_term(size, sum))
    });
    signed_logsum_with_gross(terms)
}

/// Same sum when all `n` rates equal `rate`: subsets are grouped by size
/// with binomial weights.
pub(crate) fn alternating_subset_sum_iid<F>(n: usize, rate: f64, log_term: F) -> Result<(SignedLogValue, f64)>
where
    F: Fn(usize, f64) -> f64,
{
    let mut terms = Vec::with_capacity(n);
    for k in 1..=n {
        let weight = log_binomial(n as u64, k as u64)?;
        terms.push(SignedLogValue::new(Sign::parity(k + 1), weight + log_term(k, k as f64 * rate)));
    }
    signed_logsum_with_gross(terms)
}

/// Uses the grouped form when every rate is equal and enumeration
/// otherwise.
pub(crate) fn alternating_subset_sum_auto<F>(rates: &[f64], log_term: F) -> Result<(SignedLogValue, f64)>
where
    F: Fn(usize, f64) -> f64,
{
    match rates.split_first() {
        Some((&first, rest)) if rest.iter().all(|&r| r == first) => {
            alternating_subset_sum_iid(rates.len(), first, log_term)
        }
        _ => alternating_subset_sum(rates, log_term),
    }
}

fn rates_from_means(means: &[f64]) -> Result<Vec<f64>> {
    if means.is_empty() {
        return Err(domain!("max of exponentials: empty list of means"));
    }
    means
        .iter()
        .map(|&m| {
            if m > 0.0 && m.is_finite() {
                Ok(1.0 / m)
            } else {
                Err(domain!("max of exponentials: mean {m} must be positive"))
            }
        })
        .collect()
}

/// CDF of `max_k X_k` with `X_k ~ Exp(mean = means[k])` independent:
/// `1 + Σ_{A ≠ ∅} (-1)^{|A|} exp(-x Σ_{k∈A} 1/means[k])`.
pub fn max_exp_cdf(means: &[f64], x: f64) -> Result<f64> {
    let rates = rates_from_means(means)?;
    if x.is_nan() {
        return Err(domain!("max_exp_cdf: x is NaN"));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    // 1 - Σ (-1)^{|A|+1} e^{-x s_A}, the leading one folded in as an extra term
    let (tail, ln_gross) = alternating_subset_sum(&rates, |_, s| -x * s)?;
    let (sum, ln_gross2) = signed_logsum_with_gross([SignedLogValue::positive(0.0), tail * SignedLogValue::new(Sign::Negative, 0.0)])?;
    finish_probability("max_exp_cdf", sum, ln_gross.max(ln_gross2))
}

/// Grouped form of [`max_exp_cdf`] for `n` variables sharing one mean.
pub fn max_exp_cdf_iid(n: usize, mean: f64, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain!("max_exp_cdf_iid: n must be ≥ 1"));
    }
    let rate = rates_from_means(&[mean])?[0];
    if x.is_nan() {
        return Err(domain!("max_exp_cdf_iid: x is NaN"));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    let (tail, ln_gross) = alternating_subset_sum_iid(n, rate, |_, s| -x * s)?;
    let (sum, ln_gross2) = signed_logsum_with_gross([SignedLogValue::positive(0.0), tail * SignedLogValue::new(Sign::Negative, 0.0)])?;
    finish_probability("max_exp_cdf_iid", sum, ln_gross.max(ln_gross2))
}

/// Density of `max_k X_k`:
/// `Σ_{A ≠ ∅} (-1)^{|A|+1} s_A exp(-x s_A)` with `s_A = Σ_{k∈A} 1/means[k]`.
pub fn max_exp_pdf(means: &[f64], x: f64) -> Result<f64> {
    let rates = rates_from_means(means)?;
    if x.is_nan() || x < 0.0 {
        return Err(domain!("max_exp_pdf: x = {x} must be nonnegative"));
    }
    let (sum, ln_gross) = alternating_subset_sum(&rates, |_, s| libm::log(s) - x * s)?;
    let v = sum.to_f64();
    let slack = 64.0 * f64::EPSILON * libm::exp(ln_gross);
    if v < -slack {
        return Err(Error::Numerical(alloc::format!("max_exp_pdf evaluated to {v:e} at x = {x}")));
    }
    Ok(v.max(0.0))
}

/// Raw moment `E[(max_k X_k)^order]`
/// `= order! Σ_{A ≠ ∅} (-1)^{|A|+1} s_A^{-order}`, in log form.
pub fn max_exp_moment(means: &[f64], order: u32) -> Result<SignedLogValue> {
    let rates = rates_from_means(means)?;
    let k = order as f64;
    let (sum, _) = alternating_subset_sum_auto(&rates, |_, s| -k * libm::log(s))?;
    Ok(sum * SignedLogValue::positive(ln_factorial(order as u64)))
}
