//! Plot-data exports: 2-D pathloss histograms, the correlation matrix,
//! per-record scenario traces and the sweep curves, all as JSON files.

use serde::Serialize;

use plr_data::{column_index, correlation_matrix, RecordSet, COLUMNS};

use crate::error::PipelineError;
use crate::report::{ExperimentReport, FractionRow, SweepRow, TraceSeries};

#[derive(Debug, Serialize)]
pub struct Hist2d {
    pub x_column: String,
    pub y_column: String,
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    /// counts[xi][yi], summing to the record count.
    pub counts: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct HistogramPlot {
    pub kind: &'static str,
    pub record_count: usize,
    pub plots: Vec<Hist2d>,
}

#[derive(Debug, Serialize)]
pub struct CorrelationPlot {
    pub kind: &'static str,
    pub columns: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct TracePlot<'a> {
    pub kind: &'static str,
    pub series: &'a [TraceSeries],
}

#[derive(Debug, Serialize)]
pub struct SweepPlot<'a> {
    pub kind: &'static str,
    pub epsilon_sweep: &'a [SweepRow],
    pub fraction_sweep: &'a [FractionRow],
}

fn edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    if lo == hi {
        return vec![lo, hi];
    }
    let width = (hi - lo) / bins as f64;
    let mut out: Vec<f64> = (0..bins).map(|i| lo + width * i as f64).collect();
    out.push(hi);
    out
}

fn bin_of(edges: &[f64], v: f64) -> usize {
    let bins = edges.len() - 1;
    if bins == 0 {
        return 0;
    }
    let lo = edges[0];
    let hi = edges[bins];
    if hi == lo {
        return 0;
    }
    let idx = ((v - lo) / (hi - lo) * bins as f64).floor() as usize;
    idx.min(bins - 1)
}

fn hist2d(set: &RecordSet, x_column: &str, bins: usize) -> Result<Hist2d, PipelineError> {
    let xi = column_index(x_column)?;
    let yi = column_index("pathloss")?;
    let xs = set.column(xi);
    let ys = set.column(yi);
    let x_edges = edges(set.stats()[xi].min, set.stats()[xi].max, bins);
    let y_edges = edges(set.stats()[yi].min, set.stats()[yi].max, bins);
    let nx = x_edges.len() - 1;
    let ny = y_edges.len() - 1;
    let mut counts = vec![vec![0usize; ny.max(1)]; nx.max(1)];
    for (x, y) in xs.iter().zip(&ys) {
        counts[bin_of(&x_edges, *x)][bin_of(&y_edges, *y)] += 1;
    }
    Ok(Hist2d {
        x_column: x_column.to_string(),
        y_column: "pathloss".to_string(),
        x_edges,
        y_edges,
        counts,
    })
}

/// Pathloss distribution against distance and against time of arrival.
pub fn histogram_plot(set: &RecordSet, bins: usize) -> Result<String, PipelineError> {
    if bins == 0 {
        return Err(PipelineError::Config("bins must be >= 1".into()));
    }
    let plot = HistogramPlot {
        kind: "histogram",
        record_count: set.len(),
        plots: vec![
            hist2d(set, "distance", bins)?,
            hist2d(set, "time_of_arrival", bins)?,
        ],
    };
    to_json(&plot)
}

pub fn correlation_plot(set: &RecordSet) -> Result<String, PipelineError> {
    let matrix = correlation_matrix(set)?;
    let plot = CorrelationPlot {
        kind: "correlation",
        columns: COLUMNS.iter().map(|c| c.to_string()).collect(),
        matrix,
    };
    to_json(&plot)
}

pub fn trace_plot(report: &ExperimentReport) -> Result<String, PipelineError> {
    to_json(&TracePlot {
        kind: "scenario_trace",
        series: &report.scenario_trace,
    })
}

pub fn sweep_plot(report: &ExperimentReport) -> Result<String, PipelineError> {
    to_json(&SweepPlot {
        kind: "sweep",
        epsilon_sweep: &report.epsilon_sweep,
        fraction_sweep: &report.fraction_sweep,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, PipelineError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| PipelineError::Data(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
