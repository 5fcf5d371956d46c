use std::path::PathBuf;

/// Errors produced anywhere in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A numeric parameter is outside its domain (e.g. `dim = 0`, `bandwidth <= 0`).
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    /// A point has a non-finite coordinate.
    #[error("non-finite coordinate in row {row}")]
    NonFinite { row: usize },

    #[error("index {index} out of range for {len} points")]
    Index { index: usize, len: usize },

    /// A row cannot be normalized because it is (numerically) zero.
    #[error("degenerate encoding: row {row} has zero norm")]
    DegenerateEncoding { row: usize },

    /// Two objects that must agree in dimension or bandwidth do not.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A corruption model removed every point.
    #[error("degenerate output: {0}")]
    DegenerateOutput(String),

    #[error("{path}: line {line}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{0}: no points")]
    EmptyInput(PathBuf),

    /// Malformed encoding file (bad magic, truncated payload, oversized header).
    #[error("encoding format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            reason: format!("must be a positive finite number, got {value}"),
        })
    }
}
