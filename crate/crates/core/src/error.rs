use thiserror::Error;

/// Errors raised by the simulator, the solvers and the batch driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QdoError {
    #[error("state norm {norm:e} is too small to normalize")]
    DegenerateState { norm: f64 },

    #[error("{name} = {value} is outside the allowed range {allowed}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("Coulomb denominator vanishes at {count} point(s), first at grid index {first:?}")]
    SingularConfiguration {
        count: usize,
        first: Option<(usize, usize)>,
    },

    #[error("cost became non-finite at step {step}")]
    NonFinite { step: usize, params: Vec<f64> },

    #[error("Morse fit failed: {0}")]
    FitFailed(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for QdoError {
    fn from(e: std::io::Error) -> Self {
        QdoError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QdoError>;
