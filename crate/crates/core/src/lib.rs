//! Probability of zero secrecy capacity for MIMO wiretap links that use
//! space-time transmission (STT), suboptimal antenna selection (SAS) or
//! optimal antenna selection (OAS) over Rayleigh fading.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`numerics`]: log-binomials, the regularized incomplete gamma function,
//!   signed log-domain summation and semi-infinite quadrature.
//! * [`model`]: system configuration and channel realization sampling.
//! * [`schemes`]: per-realization rates, antenna selection and the
//!   zero-secrecy event.
//! * [`analytic`]: closed forms, order statistics of exponential maxima,
//!   asymptotic bounds and the moments behind the high-MER linearization.
//! * [`montecarlo`]: seeded, partitionable estimators with Wilson intervals.
//! * [`diversity`]: log-log slope fitting of probability curves.
//!
//! IO, parallel execution and the command line live in the `secrecy-sim`
//! crate.
#![no_std]
#![deny(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub use error::{Error, Result};

pub mod analytic;
pub mod diversity;
pub mod model;
pub mod montecarlo;
pub mod numerics;
pub mod schemes;

pub use model::{ChannelRealization, Matrix, SchemeKind, SystemConfig};
pub use montecarlo::EstimateWithCI;
pub use numerics::SignedLogValue;
