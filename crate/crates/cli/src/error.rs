use std::fmt;

/// Failures of a CLI run, each with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad config, flags or input files: exit 2.
    Validation(String),
    /// A hard size cap was hit: exit 3.
    Cap(String),
    /// Reading inputs or writing the output file failed: exit 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tensorlab::Error> for CliError {
    fn from(e: tensorlab::Error) -> Self {
        match e {
            tensorlab::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}
