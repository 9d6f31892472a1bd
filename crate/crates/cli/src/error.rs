use std::fmt;
use std::path::Path;

use serde::Serialize;

/// Anything that maps to exit status 2.
#[derive(Debug)]
pub enum CliError {
    Core(coarse_embed::Error),
    Io { path: String, message: String },
    Config(String),
}

impl CliError {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "Io",
            CliError::Config(_) => "Config",
        }
    }

    /// `{"error":{"kind":..,"message":..}}` for the diagnostic stream.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Inner<'a> {
            kind: &'a str,
            message: String,
        }
        #[derive(Serialize)]
        struct Outer<'a> {
            error: Inner<'a>,
        }
        coarse_embed::report::to_json(&Outer {
            error: Inner {
                kind: self.kind(),
                message: self.to_string(),
            },
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Config(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<coarse_embed::Error> for CliError {
    fn from(e: coarse_embed::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
