//! Experiment orchestration for the pathloss robustness toolkit: the
//! undefended/attacked/secured scenario pipeline, sweeps, plot-data
//! exports and the `plr` command line built on top of them.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod plotdata;
pub mod report;

pub use config::{
    default_grid, Contamination, DataSource, ExperimentConfig, DEFAULT_EPSILON_SWEEP,
    DEFAULT_FRACTION_SWEEP, DEFAULT_SEED,
};
pub use error::PipelineError;
pub use experiment::{
    build_detector_data, contaminated_metrics, detector_features, load_data, metrics_on,
    run_experiment, sweep_epsilon, DetectorData,
};
pub use report::{ExperimentReport, FractionRow, SweepRow, TracePoint, TraceSeries};
