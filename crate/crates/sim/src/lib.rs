//! MER sweeps, diversity fits, figure reproduction and config files on top
//! of `secrecy-core`, plus the `secrecy` command-line tool.

pub mod config;
pub mod csv;
pub mod error;
pub mod figure;
pub mod parallel;
pub mod sweep;

pub use error::{SimError, SimResult};
pub use sweep::{fit_diversity, sweep_mer, DiversityEstimate, SweepRow};
