use thiserror::Error;

/// Errors produced by the numerical routines and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested integral is infinite (e.g. K(1)).
    #[error("divergent integral: {0}")]
    DivergentIntegral(String),

    /// The operation requires a != b.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Invalid harness configuration (grid, suite name, arity).
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
