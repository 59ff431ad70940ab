use thiserror::Error;

#[derive(Debug, Error)]
pub enum AttackError {
    #[error("invalid attack config: {0}")]
    InvalidConfig(String),

    #[error("no donor record clears the {delta} dB pathloss gap")]
    NoCandidate { delta: f64 },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Regress(#[from] plr_regress::RegressError),

    #[error(transparent)]
    Data(#[from] plr_data::DataError),
}
