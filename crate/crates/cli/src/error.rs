use std::path::PathBuf;

/// Exit status for a successful run or a Yes verdict.
pub const EXIT_OK: i32 = 0;
/// Exit status for a No verdict.
pub const EXIT_NO: i32 = 1;
/// Exit status for usage and input errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for guard and limit errors.
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] exactify_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("line {line}: {source}")]
    Line {
        line: usize,
        source: exactify_core::Error,
    },

    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::Line { source: e, .. } if e.is_guard() => EXIT_GUARD,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
