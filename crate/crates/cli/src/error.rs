use serde::Serialize;

/// Everything the command line can fail with.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] colorgame_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Config(_) => "config",
            CliError::Core(colorgame_core::Error::IllegalMove(_)) => "illegal_move",
            CliError::Core(_) => "core",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        let line = match self {
            CliError::Parse { line, .. } => Some(*line),
            _ => None,
        };
        let body = ErrorJson { error: self.kind(), message: self.to_string(), line };
        serde_json::to_string(&body).expect("error JSON")
    }
}
