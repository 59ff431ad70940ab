use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChansimError {
    #[error("invalid scenario config: {0}")]
    InvalidConfig(String),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("no reachable users: every grid position is blocked or inside a building")]
    NoReachableUsers,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Data(#[from] plr_data::DataError),
}
