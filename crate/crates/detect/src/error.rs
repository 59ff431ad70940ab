use thiserror::Error;

#[derive(Debug, Error)]
pub enum DetectError {
    #[error("labels must contain both classes with at least 2 rows each (class {class} has {count})")]
    ClassTooSmall { class: u8, count: usize },

    #[error("labels must be 0 or 1, found {0}")]
    BadLabel(u8),

    #[error("prediction/label length mismatch: {predicted} vs {truth}")]
    LengthMismatch { predicted: usize, truth: usize },

    #[error("feature count mismatch: model expects {expected}, row has {got}")]
    FeatureCountMismatch { expected: usize, got: usize },

    #[error("invalid gbdt params: {0}")]
    InvalidParams(String),

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("stratification infeasible: class {class} has {count} rows for {k} folds")]
    InfeasibleStratification { class: u8, count: usize, k: usize },

    #[error("training data is empty or ragged")]
    BadTrainingData,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
