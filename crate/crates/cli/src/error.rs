use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error("invalid parameter `{field}`: {reason}")]
    Invalid { field: String, reason: String },

    #[error(transparent)]
    Numerical(dce_core::Error),

    #[error("{0}")]
    Io(String),

    #[error("{failed} of {total} sweep points failed")]
    SweepFailures { failed: usize, total: usize },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Invalid { field: field.into(), reason: reason.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Invalid { .. } | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::SweepFailures { .. } => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Invalid { .. } => "InvalidParameter",
            CliError::Numerical(e) => e.kind(),
            CliError::Io(_) => "IoError",
            CliError::SweepFailures { .. } => "SweepPointFailed",
        }
    }

    /// Single-line JSON diagnostic for the error stream.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            error: &'a str,
            message: String,
            exit_code: i32,
        }
        let line = Line { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() };
        serde_json::to_string(&line).expect("plain struct serializes")
    }
}

impl From<dce_core::Error> for CliError {
    fn from(e: dce_core::Error) -> Self {
        match e {
            dce_core::Error::InvalidParameter { field, reason } => CliError::Invalid { field: field.into(), reason },
            other => CliError::Numerical(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
