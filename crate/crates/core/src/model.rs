//! System configuration and Rayleigh-fading channel realizations for the
//! source / destination / eavesdropper topology.
//!
//! Channels are sampled directly as squared magnitudes: under Rayleigh
//! fading `|h|²` is exponential with mean `α σ²`. A complex-Gaussian path
//! is kept for distributional cross-checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::{Error, Result};

/// Dense row-major matrix of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// `rows × cols` matrix with every entry equal to `value`.
    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Matrix of ones.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, 1.0)
    }

    /// Builds a matrix from its rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Validation(format!(
                    "ragged matrix: row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix from row-major data.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Validation(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Sum of row `i`.
    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Sum of all entries.
    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    /// All entries in row-major order.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// `Some(v)` if every entry equals `v`.
    pub fn uniform_value(&self) -> Option<f64> {
        let first = *self.data.first()?;
        self.data.iter().all(|&v| v == first).then_some(first)
    }

    /// Entry-wise scaling.
    pub fn scaled(&self, factor: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * factor).collect() }
    }
}

/// Transmission scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeKind {
    /// Space-time transmission over all `M` antennas with power `P/M` each.
    Stt,
    /// Suboptimal selection: the antenna with the strongest main channel.
    Sas,
    /// Optimal selection: the antenna with the largest main/wiretap rate ratio.
    Oas,
}

impl SchemeKind {
    /// All schemes in canonical order.
    pub const ALL: [SchemeKind; 3] = [SchemeKind::Stt, SchemeKind::Sas, SchemeKind::Oas];

    /// Lower-case name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Stt => "stt",
            SchemeKind::Sas => "sas",
            SchemeKind::Oas => "oas",
        }
    }

    /// Parses `stt`, `sas` or `oas` (case-insensitive).
    pub fn parse(s: &str) -> Option<Self> {
        SchemeKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s.trim()))
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Antenna counts, average gains and transmit SNR.
///
/// The mean of `|h_idj|²` is `alpha_d[i][j] * sigma2_sd` and the mean of
/// `|h_iej|²` is `alpha_e[i][j] * sigma2_se`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Source antennas `M`.
    pub m_tx: usize,
    /// Destination antennas `N_d`.
    pub n_dest: usize,
    /// Eavesdropper antennas `N_e`.
    pub n_eve: usize,
    /// Average main-channel gain.
    pub sigma2_sd: f64,
    /// Average wiretap-channel gain.
    pub sigma2_se: f64,
    /// Per-link main-channel multipliers, `M × N_d`.
    pub alpha_d: Matrix,
    /// Per-link wiretap multipliers, `M × N_e`.
    pub alpha_e: Matrix,
    /// Transmit SNR `P / σ²_n`, linear.
    pub snr: f64,
}

impl SystemConfig {
    /// i.i.d. configuration with `σ²_se = 1`, `σ²_sd = mer`, unit
    /// multipliers and unit SNR.
    pub fn iid(m_tx: usize, n_dest: usize, n_eve: usize, mer: f64) -> Self {
        SystemConfig {
            m_tx,
            n_dest,
            n_eve,
            sigma2_sd: mer,
            sigma2_se: 1.0,
            alpha_d: Matrix::ones(m_tx, n_dest),
            alpha_e: Matrix::ones(m_tx, n_eve),
            snr: 1.0,
        }
    }

    /// Same configuration with a different transmit SNR.
    pub fn with_snr(mut self, snr: f64) -> Self {
        self.snr = snr;
        self
    }

    /// Same configuration with `σ²_sd` set for the given MER, keeping `σ²_se`.
    pub fn with_mer(mut self, mer: f64) -> Self {
        self.sigma2_sd = mer * self.sigma2_se;
        self
    }

    /// Checks every invariant of the configuration.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: alloc::string::String| Err(Error::Validation(msg));
        if self.m_tx < 1 {
            return invalid("m_tx must be ≥ 1".into());
        }
        if self.n_dest < 1 {
            return invalid("n_dest must be ≥ 1".into());
        }
        if self.n_eve < 1 {
            return invalid("n_eve must be ≥ 1".into());
        }
        for (name, v) in [("sigma2_sd", self.sigma2_sd), ("sigma2_se", self.sigma2_se), ("snr", self.snr)] {
            if !(v > 0.0 && v.is_finite()) {
                return invalid(format!("{name} must be positive and finite, got {v}"));
            }
        }
        for (name, alpha, cols) in [("alpha_d", &self.alpha_d, self.n_dest), ("alpha_e", &self.alpha_e, self.n_eve)] {
            if alpha.shape() != (self.m_tx, cols) {
                let (r, c) = alpha.shape();
                return invalid(format!("{name} shape: expected {}x{cols}, got {r}x{c}", self.m_tx));
            }
            if let Some(v) = alpha.as_slice().iter().find(|v| !(**v > 0.0 && v.is_finite())) {
                return invalid(format!("{name} entries must be positive and finite, got {v}"));
            }
        }
        Ok(())
    }

    /// Main-to-eavesdropper ratio `σ²_sd / σ²_se`.
    pub fn mer(&self) -> f64 {
        self.sigma2_sd / self.sigma2_se
    }

    /// Mean of `|h_idj|²` for every link.
    pub fn main_means(&self) -> Matrix {
        self.alpha_d.scaled(self.sigma2_sd)
    }

    /// Mean of `|h_iej|²` for every link.
    pub fn wiretap_means(&self) -> Matrix {
        self.alpha_e.scaled(self.sigma2_se)
    }

    /// `Some(effective MER)` when both multiplier matrices are uniform, in
    /// which case the i.i.d. closed forms apply at that MER.
    pub fn iid_mer(&self) -> Option<f64> {
        let ad = self.alpha_d.uniform_value()?;
        let ae = self.alpha_e.uniform_value()?;
        Some(self.mer() * ad / ae)
    }
}

/// `10 log10(x)`.
pub fn to_db(linear: f64) -> f64 {
    10.0 * libm::log10(linear)
}

/// `10^(x/10)`.
pub fn from_db(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// One draw of every squared channel magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// `|h_idj|²`, `M × N_d`.
    pub g_d: Matrix,
    /// `|h_iej|²`, `M × N_e`.
    pub g_e: Matrix,
}

impl ChannelRealization {
    /// Wraps hand-made gain matrices; entries must be nonnegative and finite.
    pub fn new(g_d: Matrix, g_e: Matrix) -> Result<Self> {
        if g_d.rows() != g_e.rows() {
            return Err(Error::Validation(format!(
                "g_d has {} rows but g_e has {}",
                g_d.rows(),
                g_e.rows()
            )));
        }
        for (name, g) in [("g_d", &g_d), ("g_e", &g_e)] {
            if g.as_slice().iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(Error::Validation(format!("{name} entries must be nonnegative and finite")));
            }
        }
        Ok(ChannelRealization { g_d, g_e })
    }

    /// All-zero realization shaped for `config`.
    pub fn zeros(config: &SystemConfig) -> Self {
        ChannelRealization {
            g_d: Matrix::filled(config.m_tx, config.n_dest, 0.0),
            g_e: Matrix::filled(config.m_tx, config.n_eve, 0.0),
        }
    }

    /// Overwrites every entry with a fresh exponential draw.
    pub fn resample<R: Rng + ?Sized>(&mut self, config: &SystemConfig, rng: &mut R) {
        fill_exponential(self.g_d.as_mut_slice(), config.alpha_d.as_slice(), config.sigma2_sd, rng);
        fill_exponential(self.g_e.as_mut_slice(), config.alpha_e.as_slice(), config.sigma2_se, rng);
    }

    /// Overwrites every entry with `|h|²` of a circularly symmetric complex
    /// Gaussian `h` of the configured variance.
    pub fn resample_complex_gaussian<R: Rng + ?Sized>(&mut self, config: &SystemConfig, rng: &mut R) {
        fill_gaussian(self.g_d.as_mut_slice(), config.alpha_d.as_slice(), config.sigma2_sd, rng);
        fill_gaussian(self.g_e.as_mut_slice(), config.alpha_e.as_slice(), config.sigma2_se, rng);
    }
}

fn fill_exponential<R: Rng + ?Sized>(out: &mut [f64], alpha: &[f64], sigma2: f64, rng: &mut R) {
    for (g, a) in out.iter_mut().zip(alpha) {
        let e: f64 = rng.sample(Exp1);
        *g = e * a * sigma2;
    }
}

fn fill_gaussian<R: Rng + ?Sized>(out: &mut [f64], alpha: &[f64], sigma2: f64, rng: &mut R) {
    for (g, a) in out.iter_mut().zip(alpha) {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *g = 0.5 * (re * re + im * im) * a * sigma2;
    }
}

/// Draws one realization: every `|h|²` independent exponential with mean
/// `α σ²`. Deterministic given the stream state.
pub fn sample_realization<R: Rng + ?Sized>(config: &SystemConfig, rng: &mut R) -> ChannelRealization {
    let mut real = ChannelRealization::zeros(config);
    real.resample(config, rng);
    real
}

/// Same as [`sample_realization`] but through complex Gaussian fading
/// coefficients. Slower; used to cross-check the exponential shortcut.
pub fn sample_realization_complex_gaussian<R: Rng + ?Sized>(config: &SystemConfig, rng: &mut R) -> ChannelRealization {
    let mut real = ChannelRealization::zeros(config);
    real.resample_complex_gaussian(config, rng);
    real
}
