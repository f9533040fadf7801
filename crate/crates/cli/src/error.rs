use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Model(#[from] twospin::Error),

    #[error("bad θ range: need lo < hi and n ≥ 2 (got {lo}, {hi}, {n})")]
    BadRange { lo: f64, hi: f64, n: usize },

    #[error("{0} output is not available for this command")]
    UnsupportedFormat(&'static str),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
