//! Achievable rates, antenna selection rules and the zero-secrecy event for
//! a single channel realization.
//!
//! Inputs are assumed to come from a validated [`SystemConfig`] and a
//! realization shaped for it.

use crate::error::domain;
use crate::{ChannelRealization, Result, SchemeKind, SystemConfig};

/// Rates toward the destination and the eavesdropper, in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    /// Rate of the main channel.
    pub r_main: f64,
    /// Rate of the wiretap channel.
    pub r_wiretap: f64,
}

impl RatePair {
    /// Secrecy capacity `max(r_main - r_wiretap, 0)`.
    pub fn secrecy_capacity(&self) -> f64 {
        (self.r_main - self.r_wiretap).max(0.0)
    }
}

/// Space-time transmission: every antenna sends with power `P/M`, so the
/// receive SNR is `(snr / M) Σ_{i,j} |h|²` on both links.
pub fn stt_rates(config: &SystemConfig, real: &ChannelRealization) -> RatePair {
    let per_antenna = config.snr / config.m_tx as f64;
    RatePair {
        r_main: libm::log2(1.0 + per_antenna * real.g_d.sum()),
        r_wiretap: libm::log2(1.0 + per_antenna * real.g_e.sum()),
    }
}

/// Rates when only antenna `i` transmits at full power with MRC at both
/// receivers.
pub fn per_antenna_rates(config: &SystemConfig, real: &ChannelRealization, i: usize) -> Result<RatePair> {
    if i >= config.m_tx {
        return Err(domain!("antenna index {i} out of range for M = {}", config.m_tx));
    }
    Ok(RatePair {
        r_main: libm::log2(1.0 + config.snr * real.g_d.row_sum(i)),
        r_wiretap: libm::log2(1.0 + config.snr * real.g_e.row_sum(i)),
    })
}

/// First index of the maximum; later equal values do not replace it.
fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, v) in values.enumerate() {
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    best
}

/// Optimal selection: maximizes `(1 + snr Σ_j g_d[i][j]) / (1 + snr Σ_j g_e[i][j])`.
pub fn oas_select(config: &SystemConfig, real: &ChannelRealization) -> usize {
    let snr = config.snr;
    argmax((0..config.m_tx).map(|i| (1.0 + snr * real.g_d.row_sum(i)) / (1.0 + snr * real.g_e.row_sum(i))))
}

/// Suboptimal selection: maximizes the main-channel gain `Σ_j g_d[i][j]`.
pub fn sas_select(config: &SystemConfig, real: &ChannelRealization) -> usize {
    argmax((0..config.m_tx).map(|i| real.g_d.row_sum(i)))
}

/// Whether the main rate falls strictly below the wiretap rate.
///
/// Every scheme reduces to comparing channel-gain sums, which is what is
/// evaluated here; the result therefore does not depend on `snr`.
///
/// * STT: `Σ g_d < Σ g_e`.
/// * OAS: the best rate ratio over all antennas is below one, i.e. every
///   row satisfies `Σ_j g_d[i][j] < Σ_j g_e[i][j]`.
/// * SAS: for `b = sas_select`, `Σ_j g_d[b][j] < Σ_j g_e[b][j]`.
pub fn zero_secrecy_event(scheme: SchemeKind, config: &SystemConfig, real: &ChannelRealization) -> bool {
    match scheme {
        SchemeKind::Stt => real.g_d.sum() < real.g_e.sum(),
        SchemeKind::Oas => (0..config.m_tx).all(|i| real.g_d.row_sum(i) < real.g_e.row_sum(i)),
        SchemeKind::Sas => {
            let b = sas_select(config, real);
            real.g_d.row_sum(b) < real.g_e.row_sum(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::sample_realization;
    use crate::Matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn real(g_d: &[&[f64]], g_e: &[&[f64]]) -> ChannelRealization {
        ChannelRealization::new(Matrix::from_rows(g_d).unwrap(), Matrix::from_rows(g_e).unwrap()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn stt_rate_examples() {
        let cfg = SystemConfig::iid(1, 1, 1, 1.0);
        let r = stt_rates(&cfg, &real(&[&[1.0]], &[&[3.0]]));
        assert!(close(r.r_main, 1.0) && close(r.r_wiretap, 2.0));
        assert!(close(r.secrecy_capacity(), 0.0));

        let r = stt_rates(&cfg, &real(&[&[0.0]], &[&[0.0]]));
        assert_eq!((r.r_main, r.r_wiretap), (0.0, 0.0));

        let cfg = SystemConfig::iid(2, 1, 1, 1.0).with_snr(2.0);
        let r = stt_rates(&cfg, &real(&[&[1.0], &[2.0]], &[&[0.0], &[0.0]]));
        assert!(close(r.r_main, 2.0));
    }

    #[test]
    fn per_antenna_examples() {
        let cfg = SystemConfig::iid(1, 2, 2, 1.0);
        let r = per_antenna_rates(&cfg, &real(&[&[0.25, 0.75]], &[&[1.0, 2.0]]), 0).unwrap();
        assert!(close(r.r_main, 1.0) && close(r.r_wiretap, 2.0));

        let cfg = SystemConfig::iid(2, 2, 1, 1.0).with_snr(3.0);
        let g = real(&[&[1.0, 1.0], &[0.0, 0.0]], &[&[0.0], &[0.0]]);
        let r = per_antenna_rates(&cfg, &g, 0).unwrap();
        assert!(close(r.r_main, libm::log2(7.0)));
        assert!((r.r_main - 2.8074).abs() < 1e-4);
        assert_eq!(per_antenna_rates(&cfg, &g, 1).unwrap().r_main, 0.0);
        assert!(per_antenna_rates(&cfg, &g, 2).is_err());
    }

    #[test]
    fn oas_selection_examples() {
        let cfg = SystemConfig::iid(2, 1, 1, 1.0);
        assert_eq!(oas_select(&cfg, &real(&[&[1.0], &[5.0]], &[&[1.0], &[1.0]])), 1);
        assert_eq!(oas_select(&cfg, &real(&[&[2.0], &[2.0]], &[&[1.0], &[1.0]])), 0);
        let cfg = SystemConfig::iid(1, 1, 1, 1.0);
        assert_eq!(oas_select(&cfg, &real(&[&[0.1]], &[&[9.0]])), 0);
    }

    #[test]
    fn oas_selection_can_depend_on_snr() {
        // Antenna 0: 1 + s*10 over 1 + s*4; antenna 1: 1 + s*2 over 1 + s*0.5.
        let cfg = SystemConfig::iid(2, 1, 1, 1.0);
        let g = real(&[&[10.0], &[2.0]], &[&[4.0], &[0.5]]);
        assert_eq!(oas_select(&cfg.clone().with_snr(0.01), &g), 0);
        assert_eq!(oas_select(&cfg.with_snr(100.0), &g), 1);
    }

    #[test]
    fn sas_selection_examples() {
        let cfg = SystemConfig::iid(3, 1, 1, 1.0);
        let g = real(&[&[2.0], &[7.0], &[4.0]], &[&[0.0], &[0.0], &[0.0]]);
        assert_eq!(sas_select(&cfg, &g), 1);
        assert_eq!(sas_select(&cfg.clone().with_snr(1000.0), &g), 1);
        let g = real(&[&[3.0], &[3.0], &[3.0]], &[&[0.0], &[0.0], &[0.0]]);
        assert_eq!(sas_select(&cfg, &g), 0);
    }

    #[test]
    fn event_examples() {
        let cfg = SystemConfig::iid(1, 2, 1, 1.0);
        assert!(!zero_secrecy_event(SchemeKind::Stt, &cfg, &real(&[&[2.0, 3.0]], &[&[2.0]])));

        let cfg = SystemConfig::iid(2, 1, 1, 1.0);
        assert!(zero_secrecy_event(SchemeKind::Oas, &cfg, &real(&[&[1.0], &[0.5]], &[&[2.0], &[3.0]])));

        let g = real(&[&[3.0], &[1.0]], &[&[4.0], &[0.5]]);
        assert_eq!(sas_select(&cfg, &g), 0);
        assert!(zero_secrecy_event(SchemeKind::Sas, &cfg, &g));
    }

    #[test]
    fn ties_are_not_events() {
        let cfg = SystemConfig::iid(1, 1, 1, 1.0);
        let g = real(&[&[2.0]], &[&[2.0]]);
        for s in SchemeKind::ALL {
            assert!(!zero_secrecy_event(s, &cfg, &g));
        }
        let r = stt_rates(&cfg, &g);
        assert!(r.r_main >= r.r_wiretap);
    }

    #[test]
    fn event_matches_rate_comparison() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(m, nd, ne) in &[(1, 1, 1), (2, 2, 1), (3, 1, 2), (4, 2, 3)] {
            let cfg = SystemConfig::iid(m, nd, ne, 0.8).with_snr(5.0);
            for _ in 0..2_000 {
                let g = sample_realization(&cfg, &mut rng);
                let stt = stt_rates(&cfg, &g);
                assert_eq!(zero_secrecy_event(SchemeKind::Stt, &cfg, &g), stt.r_main < stt.r_wiretap);
                let b = sas_select(&cfg, &g);
                let sas = per_antenna_rates(&cfg, &g, b).unwrap();
                assert_eq!(zero_secrecy_event(SchemeKind::Sas, &cfg, &g), sas.r_main < sas.r_wiretap);
                let b = oas_select(&cfg, &g);
                let oas = per_antenna_rates(&cfg, &g, b).unwrap();
                assert_eq!(zero_secrecy_event(SchemeKind::Oas, &cfg, &g), oas.r_main < oas.r_wiretap);
            }
        }
    }
}
