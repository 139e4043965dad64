use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse {what}: {source}")]
    Parse {
        what: String,
        #[source]
        source: psc_core::metrics::ParseError,
    },
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("{0}")]
    Oracle(#[from] psc_core::OracleError),
    #[error("{0}")]
    Exact(#[from] psc_core::ExactError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidMetric(_) | CliError::Exact(_) => 3,
            _ => 2,
        }
    }
}
