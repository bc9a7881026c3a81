use thiserror::Error;

use crate::quad_ext::ExtElem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid or mismatched field parameter, dimension, budget.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// The inputs are well formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("reducible: {0} has a root in the base field")]
    Reducible(String),
    #[error("gamma-is-norm: {gamma} = N({witness})")]
    GammaIsNorm {
        gamma: String,
        witness: Box<ExtElem>,
    },
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}
