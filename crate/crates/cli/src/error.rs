//! Pipeline errors, split into the two CLI exit classes: configuration
//! problems (exit 2) and data/computation problems (exit 3).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config error: {0}")]
    Config(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("detector removed every record: secured set is empty")]
    EmptySecured,
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 2,
            PipelineError::Data(_) | PipelineError::EmptySecured => 3,
        }
    }

    pub fn config(e: impl std::fmt::Display) -> Self {
        PipelineError::Config(e.to_string())
    }

    pub fn data(e: impl std::fmt::Display) -> Self {
        PipelineError::Data(e.to_string())
    }
}

impl From<plr_data::DataError> for PipelineError {
    fn from(e: plr_data::DataError) -> Self {
        PipelineError::Data(e.to_string())
    }
}

impl From<plr_regress::RegressError> for PipelineError {
    fn from(e: plr_regress::RegressError) -> Self {
        PipelineError::Data(e.to_string())
    }
}

impl From<plr_attack::AttackError> for PipelineError {
    fn from(e: plr_attack::AttackError) -> Self {
        match e {
            plr_attack::AttackError::InvalidConfig(m) => PipelineError::Config(m),
            other => PipelineError::Data(other.to_string()),
        }
    }
}

impl From<plr_detect::DetectError> for PipelineError {
    fn from(e: plr_detect::DetectError) -> Self {
        match e {
            plr_detect::DetectError::InvalidParams(m) => PipelineError::Config(m),
            plr_detect::DetectError::EmptyGrid => {
                PipelineError::Config("empty parameter grid".into())
            }
            other => PipelineError::Data(other.to_string()),
        }
    }
}

impl From<plr_chansim::ChansimError> for PipelineError {
    fn from(e: plr_chansim::ChansimError) -> Self {
        match e {
            plr_chansim::ChansimError::InvalidConfig(m) => PipelineError::Config(m),
            plr_chansim::ChansimError::Io { .. } => PipelineError::Config(e.to_string()),
            other => PipelineError::Data(other.to_string()),
        }
    }
}
