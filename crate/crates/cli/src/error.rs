use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const SIZE_LIMIT: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("polynomial parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] padic_lift::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(padic_lift::Error::SizeLimit { .. }) => exit::SIZE_LIMIT,
            _ => exit::INVALID,
        }
    }
}
