//! Record schema, CSV persistence, splitting and statistics for the
//! 12-feature pathloss datasets shared by the generator, the regressor,
//! the attacks and the detector.

mod csv;
mod error;
mod record;
mod split;
mod stats;

pub use csv::{check_header, format_value, load_csv, parse_row, save_csv, write_records};
pub use error::DataError;
pub use record::{
    column_index, feature_names, FeatureStat, Provenance, Record, RecordSet, COLUMNS,
    FEATURE_COUNT, TARGET_COLUMN,
};
pub use split::{split, SplitSpec};
pub use stats::{correlation_matrix, histogram, pearson, Histogram, HistogramBin};
