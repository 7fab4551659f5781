use thiserror::Error;

/// Errors produced by sample ingestion, the tests, and table handling.
///
/// Each variant maps to a stable machine-readable category (see
/// [`Error::category`]) so that front ends can branch on the failure class
/// without parsing the human-readable message.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data that cannot be interpreted as a univariate numeric sample.
    #[error("validation error: {0}")]
    Validation(String),

    /// Missing values encountered while complete-case handling was not requested.
    #[error("missing-data error: {0}")]
    MissingData(String),

    /// More than one data column selected or implied.
    #[error("dimensionality error: {0}")]
    Dimensionality(String),

    /// No observations left after filtering.
    #[error("empty-sample error: no observations remain after filtering")]
    EmptySample,

    /// Too few observations for the requested statistic.
    #[error("degenerate-sample error: need at least {needed} observations, got {n}")]
    DegenerateSample { n: usize, needed: usize },

    /// Sample standard deviation is zero; bandwidth search is ill-posed.
    #[error("degenerate-spread error: sample has zero spread (all values equal)")]
    DegenerateSpread,

    /// Sample size below the coverage of the quantile table.
    #[error("unsupported-size error: n = {n} is below the table minimum {min}")]
    UnsupportedSize { n: usize, min: usize },

    /// A persisted table or curve failed checksum, version, or structural checks.
    #[error("corrupt-table error: {0}")]
    CorruptTable(String),

    /// An invalid calibration curve (non-monotone or too few knots).
    #[error("calibration-curve error: {0}")]
    CalibrationCurve(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable one-word category for machine-parsable error lines.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::MissingData(_) => "missing-data",
            Error::Dimensionality(_) => "dimensionality",
            Error::EmptySample => "empty-sample",
            Error::DegenerateSample { .. } => "degenerate-sample",
            Error::DegenerateSpread => "degenerate-spread",
            Error::UnsupportedSize { .. } => "unsupported-size",
            Error::CorruptTable(_) => "corrupt-table",
            Error::CalibrationCurve(_) => "calibration-curve",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
