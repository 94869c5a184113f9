use thiserror::Error;

use qhodge::filtration::FiltrationError;
use qhodge::quintic_a::QuinticAError;
use qhodge::quintic_b::PipelineError;
use qhodge::series::SeriesError;
use qhodge::twoparam::TwoParamError;

use crate::cache::CacheError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Usage(_) | CliError::Cache(_) | CliError::Io { .. } => 2,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::OrderTooSmall { .. } => CliError::Usage(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<QuinticAError> for CliError {
    fn from(e: QuinticAError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<TwoParamError> for CliError {
    fn from(e: TwoParamError) -> Self {
        match e {
            TwoParamError::Decode(_) => CliError::Usage(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

impl From<FiltrationError> for CliError {
    fn from(e: FiltrationError) -> Self {
        match e {
            FiltrationError::AxiomFailure(_) | FiltrationError::NotSpanning(_) => {
                CliError::Invariant(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}
