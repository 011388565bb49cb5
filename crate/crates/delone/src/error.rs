use std::path::PathBuf;

/// Errors of the file formats and commands, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// Malformed or invalid input.
    #[error("{0}")]
    Input(String),
    /// A window or scale too small for the requested analysis.
    #[error("{0}")]
    Scale(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Input(_) | AppError::Io { .. } => 2,
            AppError::Scale(_) => 3,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        AppError::Input(msg.into())
    }
}

impl From<delone_core::Error> for AppError {
    fn from(e: delone_core::Error) -> Self {
        if e.is_scale_error() {
            AppError::Scale(e.to_string())
        } else {
            AppError::Input(e.to_string())
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
