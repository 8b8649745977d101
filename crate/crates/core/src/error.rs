use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Every variant names the violated precondition so callers (and the CLI)
/// can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "near-singular: lambda = {lambda} is within {distance:e} of the spectral value {value}"
    )]
    NearSingular {
        lambda: f64,
        value: f64,
        distance: f64,
    },

    #[error("pole at s = {at}{}", residue.map(|r| format!(" (residue {r})")).unwrap_or_default())]
    Pole { at: f64, residue: Option<f64> },

    #[error("capacity exceeded: {what} requires {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: f64,
        limit: f64,
    },

    #[error("could not factor {0} within the iteration budget")]
    Unfactored(u64),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("{name} = {value} outside admissible interval ({lo}, {hi}]")]
    Range {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
