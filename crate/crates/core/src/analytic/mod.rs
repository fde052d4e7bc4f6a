//! Closed-form and quadrature evaluation of zero-secrecy-capacity
//! probabilities, order statistics of exponential maxima, asymptotic
//! high-MER bounds and the moments behind the linearization they rely on.
//!
//! Analytic quantities use the scale convention `σ²_se = 1`, so the main
//! channel mean equals the MER `λ`.

mod bounds;
mod closed_form;
mod moments;
mod order_stats;

pub use bounds::{oas_bounds_asymptotic, sas_bounds_asymptotic, sas_bounds_with_reference, stt_bounds_asymptotic, AsymptoticBoundPair};
pub use closed_form::{log_p_zero_stt, p_zero, p_zero_oas, p_zero_sas, p_zero_stt};
pub use moments::theorem1_moments;
pub use order_stats::{max_exp_cdf, max_exp_cdf_iid, max_exp_moment, max_exp_pdf, SUBSET_CAP};

use alloc::format;

use crate::numerics::SignedLogValue;
use crate::{Error, Result};

/// Largest tolerated excursion outside `[0, 1]` before it is reported.
const CLAMP_SLACK: f64 = 1e-12;

/// Maps a log-domain result into `[0, 1]`.
///
/// `ln_gross` is `ln Σ|terms|` of the sum that produced `value`; the slack
/// grows with it so that honest cancellation error is not reported.
pub(crate) fn finish_probability(what: &str, value: SignedLogValue, ln_gross: f64) -> Result<f64> {
    let v = value.to_f64();
    let gross = libm::exp(ln_gross);
    let slack = CLAMP_SLACK.max(64.0 * f64::EPSILON * gross);
    if v.is_nan() || v < -slack || v > 1.0 + slack {
        return Err(Error::Numerical(format!("{what} evaluated to {v:e}, outside [0, 1]")));
    }
    Ok(v.clamp(0.0, 1.0))
}

pub(crate) fn check_dims(m_tx: usize, n_dest: usize, n_eve: usize) -> Result<()> {
    if m_tx == 0 || n_dest == 0 || n_eve == 0 {
        return Err(crate::error::domain!(
            "antenna counts must be ≥ 1, got (M, N_d, N_e) = ({m_tx}, {n_dest}, {n_eve})"
        ));
    }
    Ok(())
}

pub(crate) fn check_mer(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(crate::error::domain!("MER must be positive and finite, got {lambda}"));
    }
    Ok(())
}
