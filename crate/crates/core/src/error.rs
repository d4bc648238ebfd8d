//! Error taxonomy shared by the whole crate.
//!
//! Variants map one-to-one onto the CLI exit codes: usage/domain problems,
//! input format problems, accuracy failures, and I/O.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a pole of the gamma factor or too close to s = 1.
    #[error("pole error: {0}")]
    Pole(String),

    /// A refinement loop stopped without reaching the accuracy target.
    /// Carries the best value found and the bound that was achieved.
    #[error("accuracy error: {what} (best value {value}, bound {bound})")]
    Accuracy {
        what: String,
        value: String,
        bound: String,
    },

    /// Malformed input file or decimal literal.
    #[error("format error: {0}")]
    Format(String),

    /// Polynomial whose leading coefficient vanishes at working tolerance.
    #[error("degeneracy error: {0}")]
    Degenerate(String),

    /// A request the implementation deliberately does not cover.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Even-index root of a negative radicand.
    #[error("complex branch error: {0}")]
    ComplexBranch(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
