//! MER sweeps and diversity-order fits.

use rayon::prelude::*;
use secrecy_core::analytic::{self, p_zero, AsymptoticBoundPair};
use secrecy_core::diversity::fit_log_slope;
use secrecy_core::model::from_db;
use secrecy_core::montecarlo::{check_run, derive_seed, required_samples, FadingSampler};
use secrecy_core::numerics::DEFAULT_REL_TOL;
use secrecy_core::{EstimateWithCI, Error, SchemeKind, SystemConfig};

use crate::parallel::estimate_parallel;
use crate::{SimError, SimResult};

/// Partitions per Monte Carlo row. Fixed so that results do not depend on
/// the machine.
pub const MC_PARTITIONS: u64 = 16;

/// One `(scheme, MER)` point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Scheme evaluated.
    pub scheme: SchemeKind,
    /// MER in dB.
    pub mer_db: f64,
    /// `(M, N_d, N_e)`.
    pub dims: (usize, usize, usize),
    /// Exact probability, when the multipliers are uniform.
    pub p_analytic: Option<f64>,
    /// Monte Carlo estimate, when samples were requested.
    pub p_mc: Option<EstimateWithCI>,
    /// `c_low λ^{-M N_d}`, when bounds were requested.
    pub p_lower_bound: Option<f64>,
    /// `c_up λ^{-M N_d}`, when bounds were requested.
    pub p_upper_bound: Option<f64>,
    /// What went wrong computing this row, if anything.
    pub error: Option<String>,
}

/// A fitted diversity order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiversityEstimate {
    /// Fitted slope of `-log10 p` per decade of MER.
    pub slope: f64,
    /// `M N_d`.
    pub expected: u32,
    /// Fit window in dB.
    pub window_db: (f64, f64),
    /// RMS residual of the fit, in decades.
    pub residual: f64,
}

/// `lo, lo + step, …` up to and including `hi` (within rounding).
pub fn mer_grid(lo: f64, hi: f64, step: f64) -> SimResult<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step > 0.0 && step.is_finite() && lo <= hi) {
        return Err(SimError::Config(format!("invalid MER grid {lo}:{hi}:{step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| round_db(lo + i as f64 * step)).collect())
}

/// `n` evenly spaced points from `lo` to `hi`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| round_db(lo + (hi - lo) * i as f64 / (n - 1) as f64)).collect(),
    }
}

// Grid points like 0.1 * 3 are snapped to the nearest 1e-9 dB so they print cleanly.
fn round_db(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

fn bounds_for(scheme: SchemeKind, config: &SystemConfig) -> secrecy_core::Result<AsymptoticBoundPair> {
    match scheme {
        SchemeKind::Stt => analytic::stt_bounds_asymptotic(config),
        SchemeKind::Sas => analytic::sas_bounds_asymptotic(config),
        SchemeKind::Oas => analytic::oas_bounds_asymptotic(config),
    }
}

/// Evaluates every scheme at every grid point.
///
/// Exact values come from the i.i.d. closed forms and need uniform
/// multiplier matrices; otherwise rows carry only Monte Carlo and bound
/// values. Row `(scheme, k)` draws from a seed derived from
/// `(seed, scheme, k)`. Rows are sorted by scheme, then by MER.
pub fn sweep_mer(
    schemes: &[SchemeKind],
    template: &SystemConfig,
    grid_db: &[f64],
    mc_samples: u64,
    with_bounds: bool,
    seed: u64,
) -> SimResult<Vec<SweepRow>> {
    template.validate()?;
    if grid_db.is_empty() || schemes.is_empty() {
        return Err(SimError::Config("sweep needs at least one scheme and one MER".into()));
    }
    if let Some(db) = grid_db.iter().find(|db| !db.is_finite()) {
        return Err(SimError::Config(format!("invalid MER {db} dB")));
    }
    if mc_samples > 0 {
        check_run(template, mc_samples, MC_PARTITIONS)?;
    } else if template.iid_mer().is_none() {
        return Err(SimError::Config(
            "non-uniform alpha has no closed form; request Monte Carlo samples".into(),
        ));
    }
    let schemes: Vec<SchemeKind> = SchemeKind::ALL.into_iter().filter(|s| schemes.contains(s)).collect();
    let mut grid: Vec<(usize, f64)> = grid_db.iter().copied().enumerate().collect();
    grid.sort_by(|a, b| a.1.total_cmp(&b.1));
    let jobs: Vec<(SchemeKind, usize, f64)> =
        schemes.iter().flat_map(|&s| grid.iter().map(move |&(k, db)| (s, k, db))).collect();
    Ok(jobs
        .into_par_iter()
        .map(|(scheme, k, db)| sweep_row(scheme, template, db, k as u64, mc_samples, with_bounds, seed))
        .collect())
}

fn sweep_row(
    scheme: SchemeKind,
    template: &SystemConfig,
    mer_db: f64,
    index: u64,
    mc_samples: u64,
    with_bounds: bool,
    seed: u64,
) -> SweepRow {
    let config = template.clone().with_mer(from_db(mer_db));
    let mut row = SweepRow {
        scheme,
        mer_db,
        dims: (config.m_tx, config.n_dest, config.n_eve),
        p_analytic: None,
        p_mc: None,
        p_lower_bound: None,
        p_upper_bound: None,
        error: None,
    };
    let mut errors = Vec::new();
    if let Some(lambda) = config.iid_mer() {
        match p_zero(scheme, config.m_tx, config.n_dest, config.n_eve, lambda, DEFAULT_REL_TOL) {
            Ok(p) => row.p_analytic = Some(p),
            Err(e) => errors.push(format!("analytic: {e}")),
        }
    }
    if mc_samples > 0 {
        let row_seed = derive_seed(seed, scheme, index);
        match estimate_parallel(scheme, &config, mc_samples, row_seed, MC_PARTITIONS, FadingSampler::Exponential) {
            Ok(est) => row.p_mc = Some(est),
            Err(e) => errors.push(format!("monte carlo: {e}")),
        }
    }
    if with_bounds {
        match bounds_for(scheme, &config) {
            Ok(b) => {
                let lambda = config.mer();
                row.p_lower_bound = Some(b.lower_at(lambda));
                row.p_upper_bound = Some(b.upper_at(lambda));
            }
            Err(Error::Capacity { .. }) => {}
            Err(e) => errors.push(format!("bounds: {e}")),
        }
    }
    if !errors.is_empty() {
        row.error = Some(errors.join("; "));
    }
    row
}

/// Least-squares slope of `-log10 p_analytic` against `log10 λ` over the
/// rows inside `window_db`. The rows must share one scheme and one
/// antenna configuration.
pub fn fit_diversity(rows: &[SweepRow], window_db: (f64, f64)) -> SimResult<DiversityEstimate> {
    let (lo, hi) = window_db;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::Domain(format!("window must satisfy lo < hi, got {lo}..{hi}")).into());
    }
    let first = rows.first().ok_or_else(|| Error::Domain("no rows to fit".into()))?;
    if rows.iter().any(|r| r.scheme != first.scheme || r.dims != first.dims) {
        return Err(Error::Domain("rows mix schemes or antenna configurations".into()).into());
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.mer_db >= lo && r.mer_db <= hi)
        .filter_map(|r| r.p_analytic.map(|p| (r.mer_db, p)))
        .collect();
    let fit = fit_log_slope(&points)?;
    let (m, nd, _) = first.dims;
    Ok(DiversityEstimate { slope: fit.slope, expected: (m * nd) as u32, window_db, residual: fit.residual })
}

/// Rows at or above 30 dB whose Monte Carlo run is too short to see about
/// 100 events, with the sample count that would.
pub fn underpowered(rows: &[SweepRow]) -> Vec<(SchemeKind, f64, u64)> {
    rows.iter()
        .filter(|r| r.mer_db >= 30.0)
        .filter_map(|r| {
            let need = required_samples(r.p_analytic?)?;
            let have = r.p_mc.as_ref()?.n_samples;
            (have < need).then_some((r.scheme, r.mer_db, need))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use secrecy_core::Matrix;

    fn iid(m: usize, nd: usize, ne: usize) -> SystemConfig {
        SystemConfig::iid(m, nd, ne, 1.0)
    }

    #[test]
    fn symmetry_anchor_row() {
        let rows = sweep_mer(&[SchemeKind::Stt], &iid(2, 1, 1), &[0.0], 0, false, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].p_analytic.unwrap() - 0.5).abs() < 1e-12);
        assert!(rows[0].p_mc.is_none() && rows[0].p_lower_bound.is_none());
    }

    #[test]
    fn decreasing_in_mer() {
        let grid = linspace(-10.0, 10.0, 21);
        let rows = sweep_mer(&SchemeKind::ALL, &iid(4, 1, 1), &grid, 0, false, 1).unwrap();
        assert_eq!(rows.len(), 63);
        for scheme_rows in rows.chunks(21) {
            assert!(scheme_rows.windows(2).all(|w| w[1].p_analytic < w[0].p_analytic));
        }
    }

    #[test]
    fn canonical_ordering() {
        let rows = sweep_mer(&[SchemeKind::Oas, SchemeKind::Stt], &iid(2, 1, 1), &[5.0, -5.0, 0.0], 0, true, 1).unwrap();
        let keys: Vec<(SchemeKind, f64)> = rows.iter().map(|r| (r.scheme, r.mer_db)).collect();
        assert_eq!(
            keys,
            [
                (SchemeKind::Stt, -5.0),
                (SchemeKind::Stt, 0.0),
                (SchemeKind::Stt, 5.0),
                (SchemeKind::Oas, -5.0),
                (SchemeKind::Oas, 0.0),
                (SchemeKind::Oas, 5.0)
            ]
        );
        assert!(rows.iter().all(|r| r.p_upper_bound.is_some()));
    }

    #[test]
    fn monte_carlo_rows_are_reproducible_and_agree() {
        let cfg = iid(2, 1, 2);
        let a = sweep_mer(&SchemeKind::ALL, &cfg, &[-3.0, 3.0], 20_000, false, 9).unwrap();
        let b = sweep_mer(&SchemeKind::ALL, &cfg, &[-3.0, 3.0], 20_000, false, 9).unwrap();
        assert_eq!(a, b);
        for r in &a {
            let est = r.p_mc.unwrap();
            assert!((est.p_hat - r.p_analytic.unwrap()).abs() <= 3.0 * est.half_width());
        }
        let seeds: std::collections::BTreeSet<u64> = a.iter().map(|r| r.p_mc.unwrap().seed).collect();
        assert_eq!(seeds.len(), 6);
    }

    #[test]
    fn non_uniform_alpha() {
        let mut cfg = iid(2, 1, 1);
        cfg.alpha_e = Matrix::from_rows(&[[1.0], [2.0]]).unwrap();
        assert!(sweep_mer(&[SchemeKind::Sas], &cfg, &[0.0], 0, false, 1).is_err());
        let rows = sweep_mer(&[SchemeKind::Sas], &cfg, &[0.0], 5_000, true, 1).unwrap();
        assert!(rows[0].p_analytic.is_none() && rows[0].p_mc.is_some() && rows[0].p_upper_bound.is_some());
        assert!(rows[0].error.is_none());
    }

    #[test]
    fn uniform_but_not_unit_alpha_uses_effective_mer() {
        let mut cfg = iid(2, 1, 1);
        cfg.alpha_d = Matrix::filled(2, 1, 10.0);
        let rows = sweep_mer(&[SchemeKind::Sas], &cfg, &[0.0], 0, false, 1).unwrap();
        assert!((rows[0].p_analytic.unwrap() - 1.0 / 66.0).abs() < 1e-9);
    }

    #[test]
    fn bounds_above_subset_cap_are_omitted() {
        let mut cfg = iid(3, 1, 7);
        let row: [f64; 7] = std::array::from_fn(|j| 1.0 + j as f64 * 0.1);
        cfg.alpha_e = Matrix::from_rows(&[row, row, row]).unwrap();
        let rows = sweep_mer(&[SchemeKind::Stt, SchemeKind::Oas], &cfg, &[30.0], 1000, true, 1).unwrap();
        assert!(rows[0].p_upper_bound.is_none() && rows[0].error.is_none());
        assert!(rows[1].p_upper_bound.is_some());
    }

    #[test]
    fn diversity_examples() {
        let grid = mer_grid(30.0, 50.0, 1.0).unwrap();
        for (scheme, (m, nd, ne), want, tol) in [
            (SchemeKind::Stt, (2, 1, 1), 2.0, 0.1),
            (SchemeKind::Oas, (2, 2, 1), 4.0, 0.1),
            (SchemeKind::Sas, (3, 1, 2), 3.0, 0.15),
        ] {
            let rows = sweep_mer(&[scheme], &iid(m, nd, ne), &grid, 0, false, 1).unwrap();
            let d = fit_diversity(&rows, (30.0, 50.0)).unwrap();
            assert!((d.slope - want).abs() <= tol, "{scheme}: {}", d.slope);
            assert_eq!(d.expected as f64, want);
        }
    }

    #[test]
    fn diversity_errors() {
        let rows = sweep_mer(&[SchemeKind::Stt], &iid(2, 1, 1), &[30.0, 31.0, 32.0], 0, false, 1).unwrap();
        assert_eq!(fit_diversity(&rows, (30.0, 40.0)).unwrap_err().exit_code(), 2);
        assert!(fit_diversity(&rows, (40.0, 30.0)).is_err());
        let mixed = sweep_mer(&SchemeKind::ALL, &iid(2, 1, 1), &[30.0, 31.0, 32.0, 33.0], 0, false, 1).unwrap();
        assert!(fit_diversity(&mixed, (30.0, 40.0)).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(mer_grid(0.0, 1.0, 0.25).unwrap(), [0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(mer_grid(0.0, 0.3, 0.1).unwrap(), [0.0, 0.1, 0.2, 0.3]);
        assert!(mer_grid(1.0, 0.0, 1.0).is_err());
        assert_eq!(linspace(-10.0, 30.0, 41)[13], 3.0);
    }

    #[test]
    fn underpowered_rows_are_reported() {
        let rows = sweep_mer(&[SchemeKind::Stt], &iid(1, 1, 1), &[0.0, 30.0], 1000, false, 1).unwrap();
        let notes = underpowered(&rows);
        assert_eq!(notes.len(), 1);
        assert_eq!(notes[0].1, 30.0);
        assert!(notes[0].2 > 100_000);
    }
}
