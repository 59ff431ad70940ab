//! Synthetic massive-MIMO user datasets from parametric box-city scenes.
//!
//! A scene is a base station, a user grid and axis-aligned buildings.
//! Propagation uses the image method: line of sight when the direct
//! segment is clear, specular bounces off walls, roofs and the ground
//! otherwise, capped at the configured reflection budget. The strongest
//! surviving path populates each user's 12-feature record.

mod error;
mod generate;
mod geometry;
mod pathloss;
mod scene;
mod trace;

pub use error::ChansimError;
pub use generate::{generate_scenario, path_to_record, GeneratedScenario};
pub use geometry::{segment_blocked, segment_clear, Building, Surface, Vec3};
pub use pathloss::{free_space_pathloss, received_power_watts, SPEED_OF_LIGHT};
pub use scene::{GridSpec, ScenarioConfig};
pub use trace::{trace_paths, PropagationPath, Tracer};
