use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("spec error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] nonclass::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for unparseable or invalid specs, 3 when no admissible cutoff
    /// exists, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(nonclass::Error::CutoffTooSmall { .. }) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
