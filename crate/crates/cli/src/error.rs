use thiserror::Error;

/// Everything that ends a run with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("{path}: {message}")]
    Field { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("result line {line}: {message}")]
    Result { line: usize, message: String },

    #[error(transparent)]
    Core(#[from] fforge_core::Error),
}

impl CliError {
    pub fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Field { path: path.into(), message: message.into() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
