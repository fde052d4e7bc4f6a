//! Exact probabilities of zero secrecy capacity under i.i.d. Rayleigh
//! fading as functions of the MER `λ`.

use alloc::vec::Vec;
use core::cell::RefCell;

use crate::analytic::{check_dims, check_mer, finish_probability};
use crate::numerics::{log_binomial, regularized_lower_gamma, signed_logsum_with_gross, Quadrature, SignedLogValue};
use crate::{Result, SchemeKind};

/// `ln Pr{Gamma(M N_d, λ) < Gamma(M N_e, 1)}`:
/// `(1 - a - b) ln(1 + λ) + ln Σ_{k<b} C(a + b - 1, k) λ^k` with
/// `a = M N_d`, `b = M N_e`.
pub fn log_p_zero_stt(m_tx: usize, n_dest: usize, n_eve: usize, lambda: f64) -> Result<f64> {
    check_dims(m_tx, n_dest, n_eve)?;
    check_mer(lambda)?;
    let a = (m_tx * n_dest) as u64;
    let b = (m_tx * n_eve) as u64;
    let ln_lambda = libm::log(lambda);
    let terms = (0..b)
        .map(|k| Ok(SignedLogValue::positive(log_binomial(a + b - 1, k)? + k as f64 * ln_lambda)))
        .collect::<Result<Vec<_>>>()?;
    let (sum, _) = signed_logsum_with_gross(terms)?;
    Ok((1.0 - (a + b) as f64) * libm::log1p(lambda) + sum.log_mag())
}

/// Space-time transmission: `Pr{Σ g_d < Σ g_e}`.
pub fn p_zero_stt(m_tx: usize, n_dest: usize, n_eve: usize, lambda: f64) -> Result<f64> {
    let ln_p = log_p_zero_stt(m_tx, n_dest, n_eve, lambda)?;
    finish_probability("p_zero_stt", SignedLogValue::positive(ln_p), ln_p)
}

/// Optimal antenna selection: the event needs every antenna to lose, so the
/// probability is the single-antenna STT value raised to the `M`-th power,
/// `(1+λ)^{M(1-N_d-N_e)} [Σ_{k<N_e} C(N_d+N_e-1, k) λ^k]^M`.
pub fn p_zero_oas(m_tx: usize, n_dest: usize, n_eve: usize, lambda: f64) -> Result<f64> {
    check_dims(m_tx, n_dest, n_eve)?;
    let ln_p = m_tx as f64 * log_p_zero_stt(1, n_dest, n_eve, lambda)?;
    finish_probability("p_zero_oas", SignedLogValue::positive(ln_p), ln_p)
}

/// Suboptimal antenna selection with i.i.d. wiretap links:
/// `Pr{max_i Gamma_i(N_d, λ) < Gamma(N_e, 1)}`
/// `= ∫_0^∞ P(N_d, x/λ)^M x^{N_e-1} e^{-x} / Γ(N_e) dx`.
pub fn p_zero_sas(m_tx: usize, n_dest: usize, n_eve: usize, lambda: f64, rel_tol: f64) -> Result<f64> {
    check_dims(m_tx, n_dest, n_eve)?;
    check_mer(lambda)?;
    let quad = Quadrature::new(rel_tol)?;
    let shape_d = n_dest as f64;
    let shape_e = n_eve as f64;
    let m = m_tx as f64;
    let ln_gamma_e = libm::lgamma(shape_e);

    // Evaluated in log form so deep-tail values keep their relative accuracy.
    let failure = RefCell::new(None);
    let value = quad.integrate(|x| {
        if x <= 0.0 {
            return 0.0;
        }
        match regularized_lower_gamma(shape_d, x / lambda) {
            Ok(p) if p > 0.0 => libm::exp(m * libm::log(p) + (shape_e - 1.0) * libm::log(x) - x - ln_gamma_e),
            Ok(_) => 0.0,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let v = value?;
    finish_probability("p_zero_sas", SignedLogValue::from_f64(v), libm::log(v.abs().max(f64::MIN_POSITIVE)))
}

/// Dispatches to the closed form for `scheme`.
pub fn p_zero(scheme: SchemeKind, m_tx: usize, n_dest: usize, n_eve: usize, lambda: f64, rel_tol: f64) -> Result<f64> {
    match scheme {
        SchemeKind::Stt => p_zero_stt(m_tx, n_dest, n_eve, lambda),
        SchemeKind::Sas => p_zero_sas(m_tx, n_dest, n_eve, lambda, rel_tol),
        SchemeKind::Oas => p_zero_oas(m_tx, n_dest, n_eve, lambda),
    }
}
