use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the function is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A root finder was handed an interval without a sign change.
    #[error("no sign change in [{lo}, {hi}] for {what}")]
    NoBracket { what: String, lo: f64, hi: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("need at least {need} points, got {got}")]
    InsufficientPoints { got: usize, need: usize },

    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },

    /// A result fell outside its plausible range; reported instead of recorded.
    #[error("sanity check failed: {0}")]
    Sanity(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Wraps an inner error with the task that produced it, e.g. `m=3 N=1000 replicate=7`.
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Stable identifier of the error class, used for machine-readable reporting.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidParams(_) => "invalid_params",
            Error::NoBracket { .. } => "no_bracket",
            Error::Degenerate(_) => "degenerate_input",
            Error::InsufficientPoints { .. } => "insufficient_points",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Sanity(_) => "sanity",
            Error::Config(_) => "config",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Context { source, .. } => source.kind(),
        }
    }
}
