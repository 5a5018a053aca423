use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid user-facing parameter or configuration.
    #[error("{0}")]
    Config(String),

    /// Unusable input data (missing file, unparsable cells, too few rows).
    #[error("{0}")]
    Data(String),

    /// Monotone inversion could not bracket the requested probability.
    #[error("inversion failed to bracket target probability p = {p:e}")]
    NonBracketing { p: f64 },

    /// Any other non-finite or degenerate numerical result.
    #[error("{0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    /// Short tag used in the CLI's single-line error prefix.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Data(_) | Error::Io(_) | Error::Json(_) => "data",
            Error::NonBracketing { .. } | Error::Numeric(_) => "numeric",
        }
    }

    /// Process exit code: 2 config, 3 data, 4 numeric.
    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "config" => 2,
            "data" => 3,
            _ => 4,
        }
    }
}
