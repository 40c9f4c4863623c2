use std::fmt;

/// Everything that can stop a run. Each variant maps to a stable category
/// string and exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Parse { source: String, line: usize, message: String },
    EmptyDataset(String),
    Io(String),
    Compute(varj::Error),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage-error",
            CliError::Parse { .. } => "parse-error",
            CliError::EmptyDataset(_) => "empty-dataset",
            CliError::Io(_) => "io-error",
            CliError::Compute(e) => e.category(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::EmptyDataset(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Parse { source, line, message } => write!(f, "{source}:{line}: {message}"),
            CliError::EmptyDataset(src) => write!(f, "{src}: no observations"),
            CliError::Io(m) => f.write_str(m),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<varj::Error> for CliError {
    fn from(e: varj::Error) -> Self {
        CliError::Compute(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
