use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("empty record set")]
    Empty,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("missing column: {0}")]
    MissingColumn(String),

    #[error("unexpected column: {0}")]
    UnexpectedColumn(String),

    #[error("column {position} is `{found}`, expected `{expected}`")]
    ColumnOrder {
        position: usize,
        found: String,
        expected: String,
    },

    #[error("row {row}, column {column}: {reason}")]
    Cell {
        row: usize,
        column: String,
        reason: String,
    },

    #[error("record {index}: {reason}")]
    InvalidRecord { index: usize, reason: String },

    #[error("split ratios must be non-negative and sum to 1 (got {0:?})")]
    InvalidRatios((f64, f64, f64)),

    #[error("split produced an empty {0} part")]
    EmptySplitPart(&'static str),

    #[error("correlation needs at least 2 records")]
    TooFewRecords,

    #[error("correlation needs at least one feature with nonzero variance")]
    AllConstant,

    #[error("histogram needs bins >= 1")]
    ZeroBins,

    #[error("unknown column name: {0}")]
    UnknownColumn(String),
}
