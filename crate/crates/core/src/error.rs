//! Error type shared across the crate.

use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Non-finite samples, mismatched grids, malformed construction input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A divergent integrand or a value that left the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The grid cannot resolve the requested length scale.
    #[error("resolution error: smearing width {width} needs at least {needed} points per width near r = {at}, grid provides {have}")]
    Resolution {
        width: f64,
        at: f64,
        needed: f64,
        have: f64,
    },

    /// An iterative solver failed; carries whatever iterate history the
    /// solver had accumulated.
    #[error("solver failure in {what}: {detail}")]
    SolverFailure {
        what: &'static str,
        detail: String,
        history: Vec<f64>,
    },

    /// Channel cutoff too small: the top angular channel still binds.
    #[error("l_max = {l_max} still has {still_bound} negative eigenvalue(s); raise l_max")]
    LMaxTooSmall { l_max: u32, still_bound: usize },

    /// SCF finished with a nonnegative highest occupied orbital energy,
    /// signalling an electron the mean field does not bind.
    #[error("unbound electron: highest occupied orbital energy {homo} is above the bound-state threshold {threshold}")]
    UnboundElectron { homo: f64, threshold: f64 },

    /// SCF did not reach the residual target; carries the residual history.
    #[error("SCF did not converge after {sweeps} sweeps (last residual {last_residual:e})")]
    ScfNonConvergence {
        sweeps: usize,
        last_residual: f64,
        history: Vec<f64>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
}
