use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: invalid UTF-8", path.display())]
    InvalidUtf8 { path: PathBuf },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error("model file version {found} is not supported (expected {expected})")]
    ModelVersion { found: u32, expected: u32 },

    #[error("model file checksum mismatch (file truncated or corrupted)")]
    ModelChecksum,

    #[error("malformed model file: {0}")]
    ModelFormat(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("evaluation set is empty")]
    EmptyGold,
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(file: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }
}

/// Reads a whole file as UTF-8, rejecting invalid sequences instead of
/// replacing them.
pub fn read_utf8(path: &std::path::Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|_| Error::InvalidUtf8 {
        path: path.to_path_buf(),
    })
}
