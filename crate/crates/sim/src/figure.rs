//! Reproduction of the four result figures as CSV files plus a manifest.
//!
//! | id | curves | x axis |
//! |----|--------|--------|
//! | 2 | all schemes, `(M, 1, 1)` for `M ∈ {2, 4}` | 41 points, −10..30 dB |
//! | 3 | all schemes, `(M, 1, 1)`, 3 dB | `M ∈ 1..8` |
//! | 4 | all schemes, `(4, 1, 1)` and `(4, 4, 4)` | 41 points, −10..30 dB |
//! | 5 | OAS `(4, 4, 2)` with lower and upper bounds | 31 points, 0..60 dB |

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use secrecy_core::{SchemeKind, SystemConfig};
use serde::Serialize;

use crate::csv::{format_row, to_csv, HEADER};
use crate::sweep::{linspace, sweep_mer, MC_PARTITIONS};
use crate::{SimError, SimResult, SweepRow};

/// Monte Carlo samples per point unless overridden.
pub const DEFAULT_SAMPLES: u64 = 100_000;
/// Master seed unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_917;
/// MER of the antenna-count figure, in dB.
pub const FIG3_MER_DB: f64 = 3.0;

/// One CSV written by [`figure`].
#[derive(Debug, Clone)]
pub struct Curve {
    /// File written.
    pub path: PathBuf,
    /// Scheme plotted.
    pub scheme: SchemeKind,
    /// Rows in file order.
    pub rows: Vec<SweepRow>,
}

/// Everything [`figure`] produced.
#[derive(Debug, Clone)]
pub struct FigureOutput {
    /// Per-curve files and their rows.
    pub curves: Vec<Curve>,
    /// The manifest file.
    pub manifest: PathBuf,
}

#[derive(Serialize)]
struct Manifest<'a> {
    figure: u8,
    tool_version: &'a str,
    seed: u64,
    mc_samples: u64,
    mc_partitions: u64,
    x_axis: &'a str,
    x_values: Vec<f64>,
    curves: Vec<ManifestCurve>,
    notes: Vec<&'a str>,
}

#[derive(Serialize)]
struct ManifestCurve {
    file: String,
    scheme: &'static str,
    #[serde(rename = "M")]
    m: Vec<usize>,
    #[serde(rename = "N_d")]
    n_d: usize,
    #[serde(rename = "N_e")]
    n_e: usize,
    bounds: bool,
}

fn tag(dims: (usize, usize, usize)) -> String {
    format!("{}{}{}", dims.0, dims.1, dims.2)
}

fn write(path: &Path, text: &str) -> SimResult<()> {
    std::fs::write(path, text).map_err(|e| SimError::io(path, e))
}

/// Writes figure `fig_id` into `out_dir`. `mc_samples = 0` skips Monte
/// Carlo columns.
pub fn figure(fig_id: u8, out_dir: &Path, mc_samples: u64, seed: u64) -> SimResult<FigureOutput> {
    std::fs::create_dir_all(out_dir).map_err(|e| SimError::io(out_dir, e))?;
    let mut curves = Vec::new();
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    let (x_axis, x_values) = match fig_id {
        2 | 4 => {
            let grid = linspace(-10.0, 30.0, 41);
            let configs: &[(usize, usize, usize)] = if fig_id == 2 { &[(2, 1, 1), (4, 1, 1)] } else { &[(4, 1, 1), (4, 4, 4)] };
            for (c, &(m, nd, ne)) in configs.iter().enumerate() {
                let template = SystemConfig::iid(m, nd, ne, 1.0);
                let rows = sweep_mer(&SchemeKind::ALL, &template, &grid, mc_samples, false, seed.wrapping_add(c as u64))?;
                for scheme in SchemeKind::ALL {
                    let file = format!("fig{fig_id}_{}_{}.csv", tag((m, nd, ne)), scheme.name());
                    let scheme_rows: Vec<SweepRow> = rows.iter().filter(|r| r.scheme == scheme).cloned().collect();
                    let path = out_dir.join(&file);
                    write(&path, &to_csv(&scheme_rows))?;
                    entries.push(ManifestCurve { file, scheme: scheme.name(), m: vec![m], n_d: nd, n_e: ne, bounds: false });
                    curves.push(Curve { path, scheme, rows: scheme_rows });
                }
            }
            ("mer_db", grid)
        }
        3 => {
            let ms: Vec<usize> = (1..=8).collect();
            let mut per_scheme: Vec<Vec<SweepRow>> = vec![Vec::new(); 3];
            for &m in &ms {
                let template = SystemConfig::iid(m, 1, 1, 1.0);
                let rows = sweep_mer(&SchemeKind::ALL, &template, &[FIG3_MER_DB], mc_samples, false, seed.wrapping_add(m as u64))?;
                for row in rows {
                    let k = SchemeKind::ALL.iter().position(|s| *s == row.scheme).expect("scheme");
                    per_scheme[k].push(row);
                }
            }
            for (scheme, rows) in SchemeKind::ALL.into_iter().zip(per_scheme) {
                let file = format!("fig3_{}.csv", scheme.name());
                let mut text = format!("m,{HEADER}\n");
                for row in &rows {
                    let _ = writeln!(text, "{},{}", row.dims.0, format_row(row));
                }
                let path = out_dir.join(&file);
                write(&path, &text)?;
                entries.push(ManifestCurve { file, scheme: scheme.name(), m: ms.clone(), n_d: 1, n_e: 1, bounds: false });
                curves.push(Curve { path, scheme, rows });
            }
            ("m", ms.iter().map(|&m| m as f64).collect())
        }
        5 => {
            let grid = linspace(0.0, 60.0, 31);
            let template = SystemConfig::iid(4, 4, 2, 1.0);
            let rows = sweep_mer(&[SchemeKind::Oas], &template, &grid, mc_samples, true, seed)?;
            let file = "fig5_442_oas.csv".to_string();
            let path = out_dir.join(&file);
            write(&path, &to_csv(&rows))?;
            entries.push(ManifestCurve { file, scheme: "oas", m: vec![4], n_d: 4, n_e: 2, bounds: true });
            curves.push(Curve { path, scheme: SchemeKind::Oas, rows });
            notes.push("bound columns are the asymptotic expressions c * lambda^-16 and are not clipped to [0, 1]");
            ("mer_db", grid)
        }
        other => return Err(SimError::Config(format!("unknown figure id {other}; expected 2, 3, 4 or 5"))),
    };
    if mc_samples == 0 {
        notes.push("Monte Carlo columns are empty: no samples were requested");
    } else {
        notes.push("Monte Carlo cannot resolve probabilities far below 1/mc_samples; use the analytic column there");
    }
    for curve in &curves {
        for row in &curve.rows {
            if let Some(err) = &row.error {
                return Err(SimError::Config(format!(
                    "{} at {} dB: {err}",
                    row.scheme, row.mer_db
                )));
            }
        }
    }
    let manifest = Manifest {
        figure: fig_id,
        tool_version: env!("CARGO_PKG_VERSION"),
        seed,
        mc_samples,
        mc_partitions: MC_PARTITIONS,
        x_axis,
        x_values,
        curves: entries,
        notes,
    };
    let manifest_path = out_dir.join(format!("fig{fig_id}_manifest.json"));
    let mut json = serde_json::to_string_pretty(&manifest).map_err(|e| SimError::Config(e.to_string()))?;
    json.push('\n');
    write(&manifest_path, &json)?;
    Ok(FigureOutput { curves, manifest: manifest_path })
}
