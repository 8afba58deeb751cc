use thiserror::Error;

/// Crate-wide error type. Precondition violations carry enough context to be
/// reported verbatim by the CLI.
#[derive(Debug, Error)]
pub enum WeylError {
    #[error("algebra order must be at least 2, got {0}")]
    OrderTooSmall(usize),

    #[error("parameter mismatch: operands have orders {0} and {1}")]
    ParamMismatch(usize, usize),

    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: i64, n: usize },

    #[error("coefficient table must have n*n = {expected} entries, got {got}")]
    BadCoefficientCount { expected: usize, got: usize },

    #[error("amplitude vector must have n = {expected} entries, got {got}")]
    BadAmplitudeCount { expected: usize, got: usize },

    #[error("empty linear combination")]
    EmptyCombination,

    #[error("matrix must be {expected}x{expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("element is singular or ill-conditioned: condition estimate {cond:.3e}")]
    IllConditioned { cond: f64 },

    #[error("state norm deviates from 1 by {dev:.3e} (tolerance {tol:.3e})")]
    NotNormalized { dev: f64, tol: f64 },

    #[error("operator is not hermitian: max coefficient deviation {dev:.3e}")]
    NotHermitian { dev: f64 },

    #[error("matrix is not unitary: max deviation of C\u{2020}C from identity is {dev:.3e}")]
    NotUnitary { dev: f64 },

    #[error("element is not in the left ideal: residual {residual:.3e}")]
    NotInIdeal { residual: f64 },

    #[error("gaussian width must be positive, got {0}")]
    NonPositiveWidth(f64),

    #[error("time step violates the stability bound sqrt(alpha)*dt <= 0.5: got {0:.6}")]
    UnstableTimeStep(f64),

    #[error("order list must be ascending with every entry >= {min}, got {got:?}")]
    BadOrderList { min: usize, got: Vec<usize> },

    #[error("not a cyclic-shift spectrum: {detail}")]
    NotShiftSpectrum { detail: String },

    #[error("linear algebra backend error: {0}")]
    Backend(String),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ndarray_linalg::error::LinalgError> for WeylError {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        WeylError::Backend(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, WeylError>;
