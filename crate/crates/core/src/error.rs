use alloc::string::String;

/// Errors raised by the analytic engine, the model and the estimators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A [`SystemConfig`](crate::SystemConfig) violates one of its invariants.
    #[error("invalid configuration: {0}")]
    Validation(String),
    /// Inclusion-exclusion over `n` elements would exceed the enumeration cap.
    #[error("subset enumeration over {n} elements exceeds the cap of {cap}; use the i.i.d. fast path")]
    Capacity {
        /// Number of elements requested.
        n: usize,
        /// Configured cap.
        cap: usize,
    },
    /// Quadrature did not converge, or a result escaped its valid range.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::Error::Domain(alloc::format!($($arg)*)) };
}
pub(crate) use domain;
