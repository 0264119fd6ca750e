use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("domain not covered: bumps reach {reached}, need {required}")]
    DomainNotCovered { reached: f64, required: f64 },

    #[error("piecewise potential has no pieces")]
    EmptyPotential,

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("no sign change in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("coverage failure: {0} gaps drawn without covering the domain")]
    Coverage(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
