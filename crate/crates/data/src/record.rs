//! The 12-column channel observation record and the immutable set wrapper
//! that keeps per-column statistics in sync with its contents.

use serde::{Deserialize, Serialize};

use crate::error::DataError;

/// Column names, in persisted order. `pathloss` is the regression target.
pub const COLUMNS: [&str; 12] = [
    "x_coord",
    "y_coord",
    "distance",
    "pathloss",
    "doa_phi",
    "doa_theta",
    "dod_phi",
    "dod_theta",
    "phase",
    "power",
    "time_of_arrival",
    "los",
];

/// Index of the regression target within [`COLUMNS`].
pub const TARGET_COLUMN: usize = 3;

/// Number of model-input features (all columns except the target).
pub const FEATURE_COUNT: usize = 11;

/// Input-feature names, in the order produced by [`Record::features`].
pub fn feature_names() -> [&'static str; FEATURE_COUNT] {
    let mut out = [""; FEATURE_COUNT];
    let mut k = 0;
    for (i, name) in COLUMNS.iter().enumerate() {
        if i != TARGET_COLUMN {
            out[k] = name;
            k += 1;
        }
    }
    out
}

pub fn column_index(name: &str) -> Result<usize, DataError> {
    COLUMNS
        .iter()
        .position(|c| *c == name)
        .ok_or_else(|| DataError::UnknownColumn(name.to_string()))
}

/// One user's channel observation. Units follow the dataset schema:
/// meters, dB, degrees, watts, seconds. `los` is 1 for a direct path,
/// 0 when only reflected paths reach the user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub x_coord: f64,
    pub y_coord: f64,
    pub distance: f64,
    pub pathloss: f64,
    pub doa_phi: f64,
    pub doa_theta: f64,
    pub dod_phi: f64,
    pub dod_theta: f64,
    pub phase: f64,
    pub power: f64,
    pub time_of_arrival: f64,
    pub los: u8,
}

impl Record {
    /// All 12 values in column order (`los` widened to f64).
    pub fn values(&self) -> [f64; 12] {
        [
            self.x_coord,
            self.y_coord,
            self.distance,
            self.pathloss,
            self.doa_phi,
            self.doa_theta,
            self.dod_phi,
            self.dod_theta,
            self.phase,
            self.power,
            self.time_of_arrival,
            f64::from(self.los),
        ]
    }

    /// The 11 model-input features (column order with `pathloss` removed).
    pub fn features(&self) -> [f64; FEATURE_COUNT] {
        let v = self.values();
        let mut out = [0.0; FEATURE_COUNT];
        let mut k = 0;
        for (i, x) in v.iter().enumerate() {
            if i != TARGET_COLUMN {
                out[k] = *x;
                k += 1;
            }
        }
        out
    }

    /// Overwrites the 11 input features, leaving `pathloss` untouched.
    /// `los` is re-rounded to {0, 1}; every other feature stays continuous.
    pub fn apply_features(&mut self, feats: &[f64; FEATURE_COUNT]) {
        self.x_coord = feats[0];
        self.y_coord = feats[1];
        self.distance = feats[2];
        self.doa_phi = feats[3];
        self.doa_theta = feats[4];
        self.dod_phi = feats[5];
        self.dod_theta = feats[6];
        self.phase = feats[7];
        self.power = feats[8];
        self.time_of_arrival = feats[9];
        self.los = if feats[10].round() >= 1.0 { 1 } else { 0 };
    }

    fn validate(&self) -> Result<(), String> {
        for (i, v) in self.values().iter().enumerate() {
            if !v.is_finite() {
                return Err(format!("non-finite value in column {}", COLUMNS[i]));
            }
        }
        if self.distance < 0.0 {
            return Err("negative distance".into());
        }
        if self.power < 0.0 {
            return Err("negative power".into());
        }
        if self.time_of_arrival < 0.0 {
            return Err("negative time_of_arrival".into());
        }
        if self.los > 1 {
            return Err(format!("los must be 0 or 1, got {}", self.los));
        }
        Ok(())
    }
}

/// Where a record set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Generated,
    Ingested,
}

/// Per-column min/max/mean/std. Std is the population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureStat {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub std: f64,
}

/// A non-empty, validated, ordered collection of records. Statistics are
/// computed at construction; mutation goes through rebuilding, so they can
/// never drift from the contents.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSet {
    records: Vec<Record>,
    provenance: Provenance,
    stats: [FeatureStat; 12],
}

impl RecordSet {
    pub fn new(records: Vec<Record>, provenance: Provenance) -> Result<Self, DataError> {
        if records.is_empty() {
            return Err(DataError::Empty);
        }
        for (index, r) in records.iter().enumerate() {
            r.validate()
                .map_err(|reason| DataError::InvalidRecord { index, reason })?;
        }
        let stats = compute_stats(&records);
        Ok(Self {
            records,
            provenance,
            stats,
        })
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Per-column statistics, indexed like [`COLUMNS`].
    pub fn stats(&self) -> &[FeatureStat; 12] {
        &self.stats
    }

    pub fn into_records(self) -> Vec<Record> {
        self.records
    }

    /// Rebuilds the set from modified records, recomputing statistics.
    pub fn with_records(&self, records: Vec<Record>) -> Result<Self, DataError> {
        Self::new(records, self.provenance)
    }

    /// Column values as a flat vector, for statistics code.
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.records.iter().map(|r| r.values()[index]).collect()
    }
}

fn compute_stats(records: &[Record]) -> [FeatureStat; 12] {
    let n = records.len() as f64;
    let mut stats = [FeatureStat {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        mean: 0.0,
        std: 0.0,
    }; 12];
    for r in records {
        for (i, v) in r.values().iter().enumerate() {
            stats[i].min = stats[i].min.min(*v);
            stats[i].max = stats[i].max.max(*v);
            stats[i].mean += *v;
        }
    }
    for s in stats.iter_mut() {
        s.mean /= n;
    }
    for r in records {
        for (i, v) in r.values().iter().enumerate() {
            let d = *v - stats[i].mean;
            stats[i].std += d * d;
        }
    }
    for s in stats.iter_mut() {
        s.std = (s.std / n).sqrt();
    }
    stats
}
