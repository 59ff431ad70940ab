use thiserror::Error;

#[derive(Debug, Error)]
pub enum RegressError {
    #[error("need more rows than features: got {rows}, need >= {need}")]
    TooFewRows { rows: usize, need: usize },

    #[error("non-finite feature value")]
    NonFiniteFeature,

    #[error("prediction/target length mismatch: {predictions} vs {targets}")]
    LengthMismatch { predictions: usize, targets: usize },

    #[error("invalid model: {0}")]
    BadModel(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
