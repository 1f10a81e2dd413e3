use effdim_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed flag values or input files.
    #[error("parse error: {0}")]
    Parse(String),
    /// The library rejected the request.
    #[error("{0}")]
    Precondition(CoreError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 3,
            CliError::Precondition(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse(msg) => CliError::Parse(msg),
            other => CliError::Precondition(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
