//! Adaptive Gauss–Kronrod quadrature over `[0, ∞)`.
//!
//! The half line is cut into geometric panels `[0, 1], [1, 2], [2, 4], …`.
//! Each panel is integrated by adaptive bisection with the 21-point
//! Kronrod rule. Panels are added until their masses decay geometrically
//! and the extrapolated tail drops below a tenth of the requested relative
//! tolerance. Integrands are expected to be nonnegative and eventually
//! exponentially decaying.

use alloc::collections::BinaryHeap;
use alloc::format;
use core::cmp::Ordering;

use crate::error::domain;
use crate::{Error, Result};

/// Default relative tolerance for analytic evaluations.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Semi-infinite integrator with an explicit refinement budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    /// Target relative error of the full integral.
    pub rel_tol: f64,
    /// Maximum number of subintervals across all panels.
    pub max_intervals: usize,
    /// Maximum number of geometric panels (the last one ends at `2^(n-1)`).
    pub max_panels: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { rel_tol: DEFAULT_REL_TOL, max_intervals: 20_000, max_panels: 64 }
    }
}

/// Integral of `f` over `[0, ∞)` to relative tolerance `rel_tol`.
pub fn integrate_semi_infinite<F>(f: F, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    Quadrature::new(rel_tol)?.integrate(f)
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

impl Quadrature {
    /// Integrator with the default budget; `rel_tol` must lie in `(0, 1e-3]`.
    pub fn new(rel_tol: f64) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(domain!("quadrature: rel_tol = {rel_tol} outside (0, 1e-3]"));
        }
        Ok(Quadrature { rel_tol, ..Quadrature::default() })
    }

    /// Integrates `f` over `[0, ∞)`.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let mut total = 0.0;
        let mut prev_mass = f64::NAN;
        let mut used = 0usize;
        let mut lo = 0.0;
        let mut hi = 1.0;
        for panel in 0..self.max_panels {
            let (mass, n) = self.integrate_panel(&f, lo, hi, total, self.max_intervals - used)?;
            used += n;
            total += mass;
            if panel >= 2 && mass <= 0.5 * prev_mass {
                let ratio = mass / prev_mass;
                let tail = mass * ratio / (1.0 - ratio);
                if tail <= 0.1 * self.rel_tol * total {
                    return Ok(total);
                }
            }
            prev_mass = mass;
            lo = hi;
            hi *= 2.0;
        }
        if total == 0.0 {
            return Ok(0.0);
        }
        Err(Error::Numerical(format!(
            "quadrature tail did not decay by x = {lo:e}: partial integral {total:e}, last panel mass {prev_mass:e}, {used} subintervals"
        )))
    }

    /// Adaptive bisection on `[a, b]`. The error target is relative to the
    /// larger of the panel's own mass and the mass accumulated so far.
    fn integrate_panel<F>(&self, f: &F, a: f64, b: f64, running: f64, budget: usize) -> Result<(f64, usize)>
    where
        F: Fn(f64) -> f64,
    {
        let first = kronrod21(f, a, b)?;
        let mut value = first.value;
        let mut error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);
        let mut count = 1usize;
        loop {
            let target = 0.25 * self.rel_tol * value.abs().max(running);
            if error <= target || error == 0.0 {
                return Ok((value, count));
            }
            if count + 1 > budget {
                return Err(Error::Numerical(format!(
                    "quadrature budget exhausted on panel [{a:e}, {b:e}]: estimate {value:e}, error {error:e}, target {target:e}, {count} subintervals"
                )));
            }
            let worst = heap.pop().expect("heap holds at least one segment");
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                return Err(Error::Numerical(format!(
                    "quadrature cannot bisect [{:e}, {:e}] any further: estimate {value:e}, error {error:e}",
                    worst.a, worst.b
                )));
            }
            let left = kronrod21(f, worst.a, mid)?;
            let right = kronrod21(f, mid, worst.b)?;
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
            count += 1;
            if count % 64 == 0 {
                // Re-sum to shed accumulated rounding in the running totals.
                value = heap.iter().map(|s| s.value).sum();
                error = heap.iter().map(|s| s.error).sum();
            }
        }
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numerical(format!("integrand returned {v} at x = {x:e}")))
        }
    };

    let f_center = eval(center)?;
    let mut kronrod = WGK[10] * f_center;
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = eval(center - x)?;
        let f2 = eval(center + x)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    let error = rescale_error(err, res_abs * half.abs(), res_asc * half.abs());
    Ok(Segment { a, b, value, error })
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err;
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = libm::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}
