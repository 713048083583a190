use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function} did not converge after {terms} terms (achieved relative tolerance {achieved:e})")]
    Convergence {
        function: &'static str,
        terms: usize,
        achieved: f64,
    },

    #[error("quadrature tolerance not met at lambda = {lambda}: error estimate {estimate:e} exceeds {allowed:e}")]
    ToleranceNotMet {
        lambda: f64,
        estimate: f64,
        allowed: f64,
    },

    #[error("invalid mode (l = {l}, m = {m}): require |m| <= l")]
    InvalidMode { l: i64, m: i64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite result in {0}")]
    NonFinite(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
