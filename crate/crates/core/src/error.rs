use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum FracError {
    #[error("fractional order must lie in the open interval (0, 1), got {0}")]
    InvalidOrder(f64),

    #[error("invalid weight interval: need t_k <= t_k1 <= t_n, got t_k={t_k}, t_k1={t_k1}, t_n={t_n}")]
    InvalidInterval { t_n: f64, t_k: f64, t_k1: f64 },

    #[error("history times must be strictly increasing (t={prev} followed by t={next})")]
    NonMonotoneTime { prev: f64, next: f64 },

    #[error("history needs at least {needed} points, got {got}")]
    HistoryTooShort { needed: usize, got: usize },

    #[error("evaluation time {t_n} does not match newest stored time {newest}")]
    EvaluationTimeMismatch { t_n: f64, newest: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero pivot in tridiagonal solve at row {0}")]
    ZeroPivot(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("mittag-leffler evaluation unsupported for alpha={alpha}, z={z}")]
    UnsupportedMittagLeffler { alpha: f64, z: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, FracError>;
