use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Usage(_) => 2,
            Self::Input(_) => 3,
            Self::Numerical(_) => 4,
        })
    }
}

impl From<anderson1d::Error> for CliError {
    fn from(e: anderson1d::Error) -> Self {
        use anderson1d::Error as E;
        match e {
            E::InvalidParameter(_) | E::Domain(_) => Self::Usage(e.to_string()),
            E::Parse { .. } | E::EmptyPotential => Self::Input(e.to_string()),
            E::DomainNotCovered { .. }
            | E::NonFinite(_)
            | E::Factorization(_)
            | E::NoSignChange { .. }
            | E::Coverage(_) => Self::Numerical(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
