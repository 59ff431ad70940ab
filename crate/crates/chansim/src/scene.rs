//! Scenario configuration and its JSON schema.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ChansimError;
use crate::geometry::{Building, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// South-west corner of the user grid, meters.
    pub origin: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    /// User spacing along both axes, meters.
    pub spacing: f64,
}

/// One urban emulation scene. Serialized as the `--scene` JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// Base-station position, meters.
    pub bs_position: [f64; 3],
    pub user_grid: GridSpec,
    /// Height at which every user antenna sits, meters.
    pub user_height: f64,
    /// Carrier frequency, Hz.
    pub carrier_freq: f64,
    /// Transmit power, dBm.
    pub tx_power_dbm: f64,
    pub buildings: Vec<Building>,
    /// Bounce budget per path, 0..=4.
    pub max_reflections: usize,
    /// Loss added per bounce, dB.
    pub reflection_loss_db: f64,
    /// Recorded as metadata only; the channel is narrowband.
    pub bandwidth_hz: f64,
    /// Reserved for stochastic scene extensions; generation itself is
    /// a pure function of the geometry.
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            bs_position: [0.0, 0.0, 15.0],
            user_grid: GridSpec {
                origin: [0.0, 0.0],
                nx: 1,
                ny: 1,
                spacing: 0.37,
            },
            user_height: 2.0,
            carrier_freq: 2.8e10,
            tx_power_dbm: 0.0,
            buildings: Vec::new(),
            max_reflections: 4,
            reflection_loss_db: 6.0,
            bandwidth_hz: 1e5,
            seed: 42,
        }
    }
}

impl ScenarioConfig {
    pub fn bs(&self) -> Vec3 {
        Vec3::new(self.bs_position[0], self.bs_position[1], self.bs_position[2])
    }

    pub fn user_at(&self, ix: usize, iy: usize) -> Vec3 {
        Vec3::new(
            self.user_grid.origin[0] + self.user_grid.spacing * ix as f64,
            self.user_grid.origin[1] + self.user_grid.spacing * iy as f64,
            self.user_height,
        )
    }

    pub fn validate(&self) -> Result<(), ChansimError> {
        let bad = |m: &str| Err(ChansimError::InvalidConfig(m.to_string()));
        if self.user_grid.spacing <= 0.0 {
            return bad("user_grid.spacing must be > 0");
        }
        if self.user_grid.nx == 0 || self.user_grid.ny == 0 {
            return bad("user_grid.nx and ny must be >= 1");
        }
        if self.carrier_freq <= 0.0 {
            return bad("carrier_freq must be > 0");
        }
        if self.max_reflections > 4 {
            return bad("max_reflections must be in 0..=4");
        }
        if self.reflection_loss_db < 0.0 {
            return bad("reflection_loss_db must be >= 0");
        }
        if self.bs_position[2] <= 0.0 {
            return bad("bs_position height must be > 0");
        }
        if self.user_height <= 0.0 {
            return bad("user_height must be > 0");
        }
        for (i, b) in self.buildings.iter().enumerate() {
            b.validate()
                .map_err(|e| ChansimError::InvalidConfig(format!("building {i}: {e}")))?;
            if b.contains(self.bs()) {
                return bad(&format!("bs_position lies inside building {i}"));
            }
        }
        Ok(())
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ChansimError> {
        let text = std::fs::read_to_string(path).map_err(|e| ChansimError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let config: ScenarioConfig =
            serde_json::from_str(&text).map_err(|e| ChansimError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }
}
