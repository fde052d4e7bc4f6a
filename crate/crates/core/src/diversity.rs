//! Least-squares slope of `-log10 p` against `log10 λ`.

use alloc::format;

use crate::error::domain;
use crate::{Error, Result};

/// A fitted log-log decay slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    /// Fitted slope of `-log10 p` per decade of MER.
    pub slope: f64,
    /// Intercept of the fitted line.
    pub intercept: f64,
    /// RMS residual, in decades of `p`.
    pub residual: f64,
    /// Points used.
    pub points: usize,
}

/// Fewest points accepted by [`fit_log_slope`].
pub const MIN_POINTS: usize = 4;

/// Fits `-log10 p = slope · log10 λ + intercept` over `(mer_db, p)` pairs.
pub fn fit_log_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < MIN_POINTS {
        return Err(domain!("slope fit needs at least {MIN_POINTS} points, got {}", points.len()));
    }
    let mut sx = 0.0;
    let mut sy = 0.0;
    for &(db, p) in points {
        if !(p > 0.0 && p.is_finite() && db.is_finite()) {
            return Err(domain!("slope fit needs positive probabilities, got p = {p} at {db} dB"));
        }
        sx += db / 10.0;
        sy += -libm::log10(p);
    }
    let n = points.len() as f64;
    let (mx, my) = (sx / n, sy / n);
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(db, p) in points {
        let dx = db / 10.0 - mx;
        sxx += dx * dx;
        sxy += dx * (-libm::log10(p) - my);
    }
    if sxx <= 0.0 {
        return Err(domain!("slope fit needs at least two distinct MER values"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = points
        .iter()
        .map(|&(db, p)| {
            let r = -libm::log10(p) - (slope * db / 10.0 + intercept);
            r * r
        })
        .sum();
    let residual = libm::sqrt(ss / n);
    if !residual.is_finite() {
        return Err(Error::Numerical(format!("slope fit residual is {residual}")));
    }
    Ok(SlopeFit { slope, intercept, residual, points: points.len() })
}
