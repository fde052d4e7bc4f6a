//! TOML system configuration files.
//!
//! ```toml
//! M = 4
//! N_d = 2
//! N_e = 2
//! mer_db = 10.0
//! snr_db = 0.0
//! # optional, row-major
//! alpha_d = [[1.0, 1.0], [1.0, 1.0], [1.0, 1.0], [1.0, 1.0]]
//! ```
//!
//! `σ²_se` is 1 and `σ²_sd` follows from `mer_db`, unless `sigma2_sd` and
//! `sigma2_se` are both given.

use std::path::Path;

use secrecy_core::model::from_db;
use secrecy_core::{Matrix, SystemConfig};
use serde::Deserialize;

use crate::{SimError, SimResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N_d")]
    n_d: usize,
    #[serde(rename = "N_e")]
    n_e: usize,
    mer_db: Option<f64>,
    #[serde(default)]
    snr_db: f64,
    alpha_d: Option<Vec<Vec<f64>>>,
    alpha_e: Option<Vec<Vec<f64>>>,
    sigma2_sd: Option<f64>,
    sigma2_se: Option<f64>,
}

/// Parses and validates a config from TOML text.
pub fn parse_config(text: &str) -> SimResult<SystemConfig> {
    let file: FileConfig = toml::from_str(text).map_err(|e| SimError::Config(format!("config: {e}")))?;
    let mut cfg = SystemConfig::iid(file.m, file.n_d, file.n_e, 1.0).with_snr(from_db(file.snr_db));
    match (file.sigma2_sd, file.sigma2_se, file.mer_db) {
        (Some(sd), Some(se), mer_db) => {
            cfg.sigma2_sd = sd;
            cfg.sigma2_se = se;
            if let Some(db) = mer_db {
                let want = from_db(db);
                if ((sd / se) / want - 1.0).abs() > 1e-9 {
                    return Err(SimError::Config(format!(
                        "config: mer_db = {db} disagrees with sigma2_sd / sigma2_se = {}",
                        sd / se
                    )));
                }
            }
        }
        (None, None, Some(db)) => cfg = cfg.with_mer(from_db(db)),
        (None, None, None) => return Err(SimError::Config("config: mer_db is required".into())),
        _ => {
            return Err(SimError::Config(
                "config: sigma2_sd and sigma2_se must be given together".into(),
            ))
        }
    }
    if let Some(rows) = file.alpha_d {
        cfg.alpha_d = matrix("alpha_d", &rows)?;
    }
    if let Some(rows) = file.alpha_e {
        cfg.alpha_e = matrix("alpha_e", &rows)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn matrix(name: &str, rows: &[Vec<f64>]) -> SimResult<Matrix> {
    Matrix::from_rows(rows).map_err(|e| SimError::Config(format!("config: {name}: {e}")))
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> SimResult<SystemConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
    parse_config(&text).map_err(|e| match e {
        SimError::Config(msg) => SimError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}
