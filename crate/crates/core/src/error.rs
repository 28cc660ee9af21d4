use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The rational closed form has a vanishing denominator at this point.
    #[error("degenerate denominator: |D| = {magnitude:e} below threshold {threshold:e}")]
    DegenerateDenominator { magnitude: f64, threshold: f64 },

    #[error("invalid amplitudes: |t|^2 + |r|^2 = {total} exceeds 1")]
    InvalidAmplitudes { total: f64 },

    #[error("indeterminate fidelity: |t_L|^2 + |t_R|^2 = {total:e}")]
    IndeterminateFidelity { total: f64 },

    #[error("singular system: pivot {pivot:e} in column {column} below {threshold:e}")]
    SingularSystem {
        column: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("invalid sweep axis: {0}")]
    InvalidAxis(String),

    #[error("unknown preset `{0}` (expected fig2a, fig2b, fig3a, fig3b, fig4a or fig4b)")]
    UnknownPreset(String),

    #[error("insufficient samples: {n} < 100")]
    InsufficientSamples { n: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by the user's input rather than by the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams { .. }
                | Error::InvalidAxis(_)
                | Error::UnknownPreset(_)
                | Error::Parse { .. }
                | Error::Validation { .. }
                | Error::Io(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
