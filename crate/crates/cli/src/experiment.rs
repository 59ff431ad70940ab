//! The three-scenario experiment: fit on clean training data, contaminate,
//! detect-and-remove, and re-measure, plus the epsilon/fraction sweeps and
//! the per-record scenario traces embedded in the report.

use sha2::{Digest, Sha256};

use plr_attack::{attack_record, fgsm_perturb, poison, AttackConfig, FgsmVariant, PoisonedSet};
use plr_chansim::{generate_scenario, ScenarioConfig};
use plr_data::{load_csv, split, Record, RecordSet, SplitSpec};
use plr_detect::{
    classification_metrics, grid_search, train_gbdt, train_logistic_baseline, GbdtModel,
    GbdtParams,
};
use plr_regress::{
    fit_least_squares, fit_records, regression_metrics, LinearModel, RegressionMetrics,
};

use crate::config::{Contamination, DataSource, ExperimentConfig};
use crate::error::PipelineError;
use crate::report::{
    DetectorReport, ExperimentReport, FractionRow, ReportProvenance, SweepRow, TracePoint,
    TraceSeries,
};

/// Loaded experiment data plus generation bookkeeping when it came from a
/// scene.
pub struct PreparedData {
    pub set: RecordSet,
    pub source: String,
    pub excluded_blocked: Option<usize>,
    pub excluded_inside: Option<usize>,
}

pub fn load_data(config: &ExperimentConfig) -> Result<PreparedData, PipelineError> {
    match &config.data {
        DataSource::Scene(path) => {
            let scene = ScenarioConfig::from_json_file(path)?;
            let generated = generate_scenario(&scene)?;
            Ok(PreparedData {
                set: generated.records,
                source: format!("scene:{}", path.display()),
                excluded_blocked: Some(generated.excluded_blocked),
                excluded_inside: Some(generated.excluded_inside),
            })
        }
        DataSource::Csv(path) => Ok(PreparedData {
            set: load_csv(path)?,
            source: format!("csv:{}", path.display()),
            excluded_blocked: None,
            excluded_inside: None,
        }),
    }
}

pub fn predictions(model: &LinearModel, records: &[Record]) -> Result<Vec<f64>, PipelineError> {
    records
        .iter()
        .map(|r| model.predict(r).map_err(PipelineError::from))
        .collect()
}

pub fn metrics_on(
    model: &LinearModel,
    records: &[Record],
) -> Result<RegressionMetrics, PipelineError> {
    let preds = predictions(model, records)?;
    let targets: Vec<f64> = records.iter().map(|r| r.pathloss).collect();
    Ok(regression_metrics(&preds, &targets)?)
}

/// All 12 columns feed the detector; pathloss is its strongest consistency
/// signal and the attacks never touch it.
pub fn detector_features(record: &Record) -> Vec<f64> {
    record.values().to_vec()
}

/// Balanced detector training data: every pool record paired with an
/// attacked copy of itself. Pairs the attack cannot produce are dropped.
pub struct DetectorData {
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
    pub skipped_pairs: usize,
}

pub fn build_detector_data(
    pool: &RecordSet,
    model: &LinearModel,
    attack: &AttackConfig,
) -> Result<DetectorData, PipelineError> {
    let mut rows = Vec::with_capacity(pool.len() * 2);
    let mut labels = Vec::with_capacity(pool.len() * 2);
    let mut skipped = 0;
    for record in pool.records() {
        match attack_record(model, pool, attack, record) {
            Ok(perturbed) => {
                rows.push(detector_features(record));
                labels.push(0);
                rows.push(detector_features(&perturbed));
                labels.push(1);
            }
            Err(plr_attack::AttackError::NoCandidate { .. }) => skipped += 1,
            Err(other) => return Err(other.into()),
        }
    }
    Ok(DetectorData {
        rows,
        labels,
        skipped_pairs: skipped,
    })
}

fn classify(
    detector: &GbdtModel,
    records: &[Record],
) -> Result<Vec<u8>, PipelineError> {
    records
        .iter()
        .map(|r| {
            detector
                .predict_label(&detector_features(r), 0.5)
                .map_err(PipelineError::from)
        })
        .collect()
}

/// Attacked-scenario evaluation for one sweep point: contaminate the test
/// set under the given attack and measure the frozen model on it.
pub fn contaminated_metrics(
    model: &LinearModel,
    test: &RecordSet,
    attack: &AttackConfig,
) -> Result<RegressionMetrics, PipelineError> {
    let poisoned = poison(test, model, attack)?;
    metrics_on(model, &poisoned.records)
}

/// The epsilon sweep: one attacked-scenario evaluation per epsilon with
/// fixed seed and splits, preceded by the exact undefended row at eps 0.
pub fn sweep_epsilon(
    model: &LinearModel,
    test: &RecordSet,
    attack: &AttackConfig,
    undefended: RegressionMetrics,
    epsilons: &[f64],
) -> Result<Vec<SweepRow>, PipelineError> {
    let mut rows = vec![SweepRow {
        epsilon: 0.0,
        mse: undefended.mse,
        r2: undefended.r2,
    }];
    for &epsilon in epsilons {
        let point = AttackConfig {
            epsilon,
            ..attack.clone()
        };
        let m = contaminated_metrics(model, test, &point)?;
        rows.push(SweepRow {
            epsilon,
            mse: m.mse,
            r2: m.r2,
        });
    }
    Ok(rows)
}

fn sweep_fraction(
    model: &LinearModel,
    test: &RecordSet,
    attack: &AttackConfig,
    fractions: &[f64],
) -> Result<Vec<FractionRow>, PipelineError> {
    let mut rows = Vec::with_capacity(fractions.len());
    for &fraction in fractions {
        let point = AttackConfig {
            fraction,
            ..attack.clone()
        };
        let m = contaminated_metrics(model, test, &point)?;
        rows.push(FractionRow {
            fraction,
            mse: m.mse,
            r2: m.r2,
        });
    }
    Ok(rows)
}

/// Per-record (index, actual, predicted) series for the clean model and
/// the three gradient-sign variants on a test-set prefix.
fn scenario_trace(
    model: &LinearModel,
    test: &RecordSet,
    attack: &AttackConfig,
    trace_len: usize,
) -> Result<Vec<TraceSeries>, PipelineError> {
    let subset = &test.records()[..trace_len.min(test.len())];
    let variants: [(&str, Option<FgsmVariant>); 4] = [
        ("clean", None),
        ("fgsm_fluctuation", Some(FgsmVariant::Fluctuation)),
        ("fgsm_maximize", Some(FgsmVariant::Maximize)),
        ("fgsm_plain", Some(FgsmVariant::Plain)),
    ];
    let mut series = Vec::with_capacity(4);
    for (name, variant) in variants {
        let mut points = Vec::with_capacity(subset.len());
        for (index, record) in subset.iter().enumerate() {
            let target = match variant {
                None => *record,
                Some(v) => fgsm_perturb(
                    model,
                    record,
                    attack.epsilon,
                    attack.scaling,
                    v,
                    attack.replace,
                ),
            };
            points.push(TracePoint {
                index,
                actual: record.pathloss,
                predicted: model.predict(&target)?,
            });
        }
        series.push(TraceSeries {
            variant: name.to_string(),
            points,
        });
    }
    Ok(series)
}

fn config_hash(config: &ExperimentConfig) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

struct DetectorOutcome {
    report: DetectorReport,
    detector: GbdtModel,
}

/// Removal pass of the secured scenario. Returns `None` when the set holds
/// no poison at all (there is nothing to isolate, so the metrics must
/// collapse onto the attacked ones exactly); errors when the detector
/// would remove every record.
fn remove_flagged(
    detector: &GbdtModel,
    poisoned: &PoisonedSet,
) -> Result<Option<(Vec<Record>, usize)>, PipelineError> {
    if poisoned.poisoned_count() == 0 {
        return Ok(None);
    }
    let predicted = classify(detector, &poisoned.records)?;
    let retained: Vec<Record> = poisoned
        .records
        .iter()
        .zip(&predicted)
        .filter(|(_, p)| **p == 0)
        .map(|(r, _)| *r)
        .collect();
    if retained.is_empty() {
        return Err(PipelineError::EmptySecured);
    }
    let removed = poisoned.records.len() - retained.len();
    Ok(Some((retained, removed)))
}

fn run_detector(
    pool: &RecordSet,
    model: &LinearModel,
    attack: &AttackConfig,
    config: &ExperimentConfig,
    eval_rows: &[Record],
    eval_truth: &[u8],
) -> Result<DetectorOutcome, PipelineError> {
    let data = build_detector_data(pool, model, attack)?;
    let (rows, labels, skipped_pairs) = (data.rows, data.labels, data.skipped_pairs);
    let grid: Vec<GbdtParams> = config
        .detector_grid
        .iter()
        .map(|p| GbdtParams {
            seed: config.boost_seed(),
            ..*p
        })
        .collect();
    let search = grid_search(&rows, &labels, &grid, config.k_folds, config.fold_seed())?;
    let detector = train_gbdt(&rows, &labels, &search.best)?;
    let predicted = classify(&detector, eval_rows)?;
    let gbdt_metrics = classification_metrics(&predicted, eval_truth)?;

    let baseline = train_logistic_baseline(&rows, &labels, 300, 0.5)?;
    let baseline_predicted: Vec<u8> = eval_rows
        .iter()
        .map(|r| baseline.predict_label(&detector_features(r), 0.5))
        .collect::<Result<_, _>>()
        .map_err(PipelineError::from)?;
    let baseline_metrics = classification_metrics(&baseline_predicted, eval_truth)?;

    Ok(DetectorOutcome {
        report: DetectorReport {
            chosen_params: search.best,
            grid_mean_f1: search.mean_f1,
            gbdt: gbdt_metrics,
            logistic_baseline: baseline_metrics,
            training_rows: rows.len(),
            skipped_pairs,
        },
        detector,
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, PipelineError> {
    config.validate()?;
    let data = load_data(config)?;
    let spec = SplitSpec {
        ratios: config.split.ratios,
        seed: config.split_seed(),
    };
    let (train, pool, test) = split(&data.set, &spec)?;
    let attack = AttackConfig {
        seed: config.attack_seed(),
        ..config.attack.clone()
    };

    let model = fit_least_squares(&train)?;
    let undefended = metrics_on(&model, test.records())?;

    let (attacked, secured, removed_count, detector_outcome);
    match config.contamination {
        Contamination::EvaluationSet => {
            let poisoned: PoisonedSet = poison(&test, &model, &attack)?;
            attacked = metrics_on(&model, &poisoned.records)?;
            let outcome = run_detector(&pool, &model, &attack, config, &poisoned.records, &poisoned.labels)?;
            match remove_flagged(&outcome.detector, &poisoned)? {
                None => {
                    secured = attacked;
                    removed_count = 0;
                }
                Some((retained, removed)) => {
                    removed_count = removed;
                    secured = metrics_on(&model, &retained)?;
                }
            }
            detector_outcome = outcome;
        }
        Contamination::TrainingSet => {
            let poisoned = poison(&train, &model, &attack)?;
            let attacked_model = fit_records(&poisoned.records)?;
            attacked = metrics_on(&attacked_model, test.records())?;
            let outcome = run_detector(&pool, &model, &attack, config, &poisoned.records, &poisoned.labels)?;
            match remove_flagged(&outcome.detector, &poisoned)? {
                None => {
                    secured = attacked;
                    removed_count = 0;
                }
                Some((retained, removed)) => {
                    removed_count = removed;
                    let secured_model = fit_records(&retained)?;
                    secured = metrics_on(&secured_model, test.records())?;
                }
            }
            detector_outcome = outcome;
        }
    }

    let epsilon_sweep = sweep_epsilon(&model, &test, &attack, undefended, &config.epsilon_sweep)?;
    let fraction_sweep = sweep_fraction(&model, &test, &attack, &config.fraction_sweep)?;
    let scenario_trace = scenario_trace(&model, &test, &attack, config.trace_len)?;

    Ok(ExperimentReport {
        provenance: ReportProvenance {
            config_hash: config_hash(config),
            seed: config.seed,
            data_source: data.source,
            record_count: data.set.len(),
            excluded_blocked: data.excluded_blocked,
            excluded_inside: data.excluded_inside,
            split_sizes: (train.len(), pool.len(), test.len()),
            contamination: config.contamination,
            epsilon: attack.epsilon,
            fraction: attack.fraction,
        },
        undefended,
        attacked,
        secured,
        removed_count,
        detector: detector_outcome.report,
        epsilon_sweep,
        fraction_sweep,
        scenario_trace,
    })
}
