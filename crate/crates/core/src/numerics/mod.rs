//! Special functions and numerical primitives shared by the analytic engine.
//!
//! Everything here is pure and reentrant.

mod binomial;
mod gamma;
mod quadrature;
mod signed;

pub use binomial::{ln_factorial, log_binomial};
pub use gamma::{regularized_lower_gamma, regularized_upper_gamma};
pub use quadrature::{integrate_semi_infinite, Quadrature, DEFAULT_REL_TOL};
pub use signed::{signed_logsum, Sign, SignedLogValue};
pub(crate) use signed::signed_logsum_with_gross;
