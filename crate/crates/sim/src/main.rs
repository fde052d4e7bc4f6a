use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use secrecy_core::analytic::p_zero;
use secrecy_core::model::from_db;
use secrecy_core::montecarlo::FadingSampler;
use secrecy_core::numerics::DEFAULT_REL_TOL;
use secrecy_core::{SchemeKind, SystemConfig};
use secrecy_sim::config::load_config;
use secrecy_sim::csv::{fmt_g12, to_csv};
use secrecy_sim::figure::{figure, DEFAULT_SAMPLES, DEFAULT_SEED};
use secrecy_sim::parallel::estimate_parallel;
use secrecy_sim::sweep::{mer_grid, underpowered};
use secrecy_sim::{fit_diversity, sweep_mer, SimError, SimResult};

/// Probability of zero secrecy capacity for space-time transmission and
/// transmit antenna selection over Rayleigh fading wiretap channels.
#[derive(Parser)]
#[command(name = "secrecy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact probability for i.i.d. links.
    Analytic {
        #[command(flatten)]
        dims: Dims,
        /// MER in dB.
        #[arg(long, allow_hyphen_values = true)]
        mer_db: f64,
        /// Relative tolerance of the SAS quadrature.
        #[arg(long, default_value_t = DEFAULT_REL_TOL)]
        rel_tol: f64,
    },
    /// Monte Carlo estimate for i.i.d. links, printed as
    /// `p_hat,ci_low,ci_high,n_samples,n_events,seed`.
    Simulate {
        #[command(flatten)]
        dims: Dims,
        /// MER in dB.
        #[arg(long, allow_hyphen_values = true)]
        mer_db: f64,
        /// Transmit SNR in dB.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        snr_db: f64,
        /// Realizations to draw.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        /// Master seed.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Independent substreams.
        #[arg(long, default_value_t = 1)]
        partitions: u64,
        /// Draw complex Gaussian coefficients instead of exponential gains.
        #[arg(long, hide = true)]
        complex_gaussian: bool,
    },
    /// MER sweep of a config file, written to DIR/sweep.csv.
    Sweep {
        /// TOML system configuration.
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated schemes.
        #[arg(long, value_delimiter = ',', value_parser = parse_scheme, default_value = "stt,sas,oas")]
        schemes: Vec<SchemeKind>,
        /// Grid as LO:HI:STEP in dB.
        #[arg(long, allow_hyphen_values = true)]
        mer_db: String,
        /// Monte Carlo samples per point; 0 for analytic only.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        /// Add asymptotic bound columns.
        #[arg(long)]
        bounds: bool,
        /// Master seed.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Fitted diversity order over a MER window, from analytic values at
    /// 1 dB spacing.
    Diversity {
        /// TOML system configuration.
        #[arg(long)]
        config: PathBuf,
        /// Scheme to fit.
        #[arg(long, value_parser = parse_scheme)]
        scheme: SchemeKind,
        /// Window as LO:HI in dB.
        #[arg(long, allow_hyphen_values = true)]
        window_db: String,
    },
    /// Writes the CSV files and manifest of one figure.
    Figure {
        /// Figure number: 2, 3, 4 or 5.
        #[arg(long)]
        id: u8,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Monte Carlo samples per point; 0 for analytic only.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        /// Master seed.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct Dims {
    /// stt, sas or oas.
    #[arg(long, value_parser = parse_scheme)]
    scheme: SchemeKind,
    /// Source antennas.
    #[arg(long)]
    m: usize,
    /// Destination antennas.
    #[arg(long)]
    nd: usize,
    /// Eavesdropper antennas.
    #[arg(long)]
    ne: usize,
}

fn parse_scheme(s: &str) -> Result<SchemeKind, String> {
    SchemeKind::parse(s).ok_or_else(|| format!("unknown scheme '{s}', expected stt, sas or oas"))
}

fn parse_reals(s: &str, n: usize, what: &str) -> SimResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || SimError::Config(format!("{what} must look like {}, got '{s}'", ["LO", "HI", "STEP"][..n].join(":")));
    if parts.len() != n {
        return Err(bad());
    }
    parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect()
}

fn run(cli: Cli) -> SimResult<()> {
    match cli.command {
        Command::Analytic { dims, mer_db, rel_tol } => {
            let p = p_zero(dims.scheme, dims.m, dims.nd, dims.ne, from_db(mer_db), rel_tol)?;
            println!("{}", fmt_g12(p));
        }
        Command::Simulate { dims, mer_db, snr_db, samples, seed, partitions, complex_gaussian } => {
            let config = SystemConfig::iid(dims.m, dims.nd, dims.ne, from_db(mer_db)).with_snr(from_db(snr_db));
            let sampler = if complex_gaussian { FadingSampler::ComplexGaussian } else { FadingSampler::Exponential };
            let e = estimate_parallel(dims.scheme, &config, samples, seed, partitions, sampler)?;
            println!(
                "{},{},{},{},{},{}",
                fmt_g12(e.p_hat),
                fmt_g12(e.ci_low),
                fmt_g12(e.ci_high),
                e.n_samples,
                e.n_events,
                e.seed
            );
        }
        Command::Sweep { config, schemes, mer_db, samples, bounds, seed, out } => {
            let template = load_config(&config)?;
            let g = parse_reals(&mer_db, 3, "--mer-db")?;
            let grid = mer_grid(g[0], g[1], g[2])?;
            let rows = sweep_mer(&schemes, &template, &grid, samples, bounds, seed)?;
            for (scheme, db, need) in underpowered(&rows) {
                eprintln!("note: {scheme} at {db} dB needs about {need} samples for a meaningful interval");
            }
            for row in rows.iter().filter(|r| r.error.is_some()) {
                eprintln!("error: {} at {} dB: {}", row.scheme, row.mer_db, row.error.as_deref().unwrap_or(""));
            }
            std::fs::create_dir_all(&out).map_err(|e| SimError::io(&out, e))?;
            let path = out.join("sweep.csv");
            std::fs::write(&path, to_csv(&rows)).map_err(|e| SimError::io(&path, e))?;
            println!("{}", path.display());
            if let Some(row) = rows.iter().find(|r| r.error.is_some()) {
                return Err(SimError::Core(secrecy_core::Error::Numerical(format!(
                    "{} row(s) failed, first at {} {} dB",
                    rows.iter().filter(|r| r.error.is_some()).count(),
                    row.scheme,
                    row.mer_db
                ))));
            }
        }
        Command::Diversity { config, scheme, window_db } => {
            let template = load_config(&config)?;
            let w = parse_reals(&window_db, 2, "--window-db")?;
            let grid = mer_grid(w[0], w[1], 1.0)?;
            let rows = sweep_mer(&[scheme], &template, &grid, 0, false, 0)?;
            let d = fit_diversity(&rows, (w[0], w[1]))?;
            println!("slope,expected,window_lo_db,window_hi_db,residual");
            println!(
                "{},{},{},{},{}",
                fmt_g12(d.slope),
                d.expected,
                fmt_g12(d.window_db.0),
                fmt_g12(d.window_db.1),
                fmt_g12(d.residual)
            );
        }
        Command::Figure { id, out, samples, seed } => {
            let output = figure(id, &out, samples, seed)?;
            for curve in &output.curves {
                println!("{}", curve.path.display());
            }
            println!("{}", output.manifest.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
