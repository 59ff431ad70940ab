//! Command-line surface. Exit codes: 0 success, 2 config error, 3 data
//! error. Seed precedence everywhere: flag > config file > fixed default.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use plr_attack::{poison, save_poisoned_csv, AttackConfig};
use plr_chansim::{generate_scenario, ScenarioConfig};
use plr_data::{load_csv, save_csv, split, RecordSet, SplitSpec};
use plr_detect::{grid_from_json_file, grid_search, train_gbdt, GbdtParams};
use plr_regress::{fit_least_squares, LinearModel};

use crate::config::ExperimentConfig;
use crate::error::PipelineError;
use crate::experiment::{detector_features, load_data, metrics_on, run_experiment, sweep_epsilon};
use crate::plotdata::{correlation_plot, histogram_plot, sweep_plot, trace_plot};
use crate::report::ExperimentReport;

#[derive(Debug, Parser)]
#[command(name = "plr", version, about = "Pathloss regression robustness toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Part {
    Train,
    Pool,
    Test,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Histogram,
    Correlation,
    ScenarioTrace,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    EvaluationSet,
    TrainingSet,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a dataset CSV from a scene JSON file.
    Generate {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the scene file's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fit the least-squares pathloss model and save it as JSON.
    Train {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Split ratios a,b,c; when given, training uses the chosen part.
        #[arg(long)]
        ratios: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Which split part to fit on (with --ratios); `all` ignores the split.
        #[arg(long, value_enum)]
        part: Option<Part>,
    },
    /// Evaluate a model on a dataset (or one split part) and emit metrics JSON.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        ratios: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        part: Option<Part>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Poison a dataset with the configured attack; writes the CSV with an
    /// is_poisoned sidecar column.
    Attack {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Grid-search and train the poison detector on a labeled CSV.
    Detect {
        /// Poisoned CSV (12 columns + is_poisoned) to train on.
        #[arg(long)]
        train: PathBuf,
        /// JSON array of GbdtParams candidates.
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        k_folds: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the full three-scenario experiment and write the report JSON.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Contamination target, overriding the config file.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Epsilon sweep of the attacked scenario.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated grid overriding the config's epsilon_sweep.
        #[arg(long)]
        epsilons: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Export plot data from a report or a dataset.
    PlotData {
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: PlotKind,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 40)]
        bins: usize,
    },
}

fn parse_ratios(text: &str) -> Result<(f64, f64, f64), PipelineError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| PipelineError::Config(format!("bad --ratios `{text}`: {e}")))?;
    if parts.len() != 3 {
        return Err(PipelineError::Config(format!(
            "--ratios needs exactly 3 values, got {}",
            parts.len()
        )));
    }
    Ok((parts[0], parts[1], parts[2]))
}

fn parse_epsilons(text: &str) -> Result<Vec<f64>, PipelineError> {
    let values: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| PipelineError::Config(format!("bad --epsilons `{text}`: {e}")))?;
    if values.is_empty() {
        return Err(PipelineError::Config("--epsilons is empty".into()));
    }
    Ok(values)
}

/// Applies the optional split selection shared by `train` and `evaluate`.
fn select_part(
    set: RecordSet,
    ratios: Option<&str>,
    seed: Option<u64>,
    part: Option<Part>,
    default_part: Part,
) -> Result<RecordSet, PipelineError> {
    let part = part.unwrap_or(if ratios.is_some() { default_part } else { Part::All });
    if part == Part::All {
        return Ok(set);
    }
    let spec = SplitSpec {
        ratios: match ratios {
            Some(text) => parse_ratios(text)?,
            None => SplitSpec::default().ratios,
        },
        seed: seed.unwrap_or(SplitSpec::default().seed),
    };
    spec.validate().map_err(PipelineError::config)?;
    let (train, pool, test) = split(&set, &spec)?;
    Ok(match part {
        Part::Train => train,
        Part::Pool => pool,
        Part::Test => test,
        Part::All => unreachable!(),
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), PipelineError> {
    std::fs::write(path, text)
        .map_err(|e| PipelineError::Data(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<LinearModel, PipelineError> {
    LinearModel::from_json_file(path).map_err(PipelineError::data)
}

pub fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Generate { scene, out, seed } => {
            let mut config = ScenarioConfig::from_json_file(&scene)?;
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let generated = generate_scenario(&config)?;
            save_csv(&generated.records, &out)?;
            eprintln!(
                "generated {} records ({} blocked, {} inside buildings excluded)",
                generated.records.len(),
                generated.excluded_blocked,
                generated.excluded_inside
            );
            Ok(())
        }
        Command::Train {
            data,
            out,
            ratios,
            seed,
            part,
        } => {
            let set = load_csv(&data)?;
            let chosen = select_part(set, ratios.as_deref(), seed, part, Part::Train)?;
            let model = fit_least_squares(&chosen)?;
            model.to_json_file(&out).map_err(PipelineError::data)?;
            Ok(())
        }
        Command::Evaluate {
            model,
            data,
            ratios,
            seed,
            part,
            out,
        } => {
            let model = load_model(&model)?;
            let set = load_csv(&data)?;
            let chosen = select_part(set, ratios.as_deref(), seed, part, Part::Test)?;
            let metrics = metrics_on(&model, chosen.records())?;
            let mut text = serde_json::to_string_pretty(&metrics)
                .map_err(|e| PipelineError::Data(e.to_string()))?;
            text.push('\n');
            match out {
                Some(path) => write_text(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Attack {
            data,
            model,
            config,
            out,
            seed,
        } => {
            let set = load_csv(&data)?;
            let model = load_model(&model)?;
            let mut attack = AttackConfig::from_json_file(&config).map_err(PipelineError::config)?;
            if let Some(seed) = seed {
                attack.seed = seed;
            }
            let poisoned = poison(&set, &model, &attack)?;
            save_poisoned_csv(&poisoned, &out)?;
            eprintln!(
                "poisoned {} of {} records ({} skipped)",
                poisoned.poisoned_count(),
                poisoned.records.len(),
                poisoned.skipped
            );
            Ok(())
        }
        Command::Detect {
            train,
            grid,
            out,
            k_folds,
            seed,
        } => {
            let poisoned = plr_attack::load_poisoned_csv(&train)?;
            let rows: Vec<Vec<f64>> = poisoned.records.iter().map(detector_features).collect();
            let grid_params = grid_from_json_file(&grid).map_err(PipelineError::config)?;
            let seed = seed.unwrap_or(crate::config::DEFAULT_SEED);
            let grid_params: Vec<GbdtParams> = grid_params
                .into_iter()
                .map(|p| GbdtParams {
                    seed: seed.wrapping_add(1),
                    ..p
                })
                .collect();
            let search = grid_search(&rows, &poisoned.labels, &grid_params, k_folds, seed)?;
            let detector = train_gbdt(&rows, &poisoned.labels, &search.best)?;
            detector.to_json_file(&out).map_err(PipelineError::data)?;
            eprintln!(
                "chosen params: n_estimators={} max_depth={} num_leaves={} subsample={} (mean F1 per candidate: {:?})",
                search.best.n_estimators,
                search.best.max_depth,
                search.best.num_leaves,
                search.best.subsample,
                search.mean_f1
            );
            Ok(())
        }
        Command::Experiment {
            config,
            out,
            seed,
            mode,
        } => {
            let mut experiment = ExperimentConfig::from_json_file(&config)?;
            if let Some(seed) = seed {
                experiment.seed = seed;
            }
            if let Some(mode) = mode {
                experiment.contamination = match mode {
                    Mode::EvaluationSet => crate::config::Contamination::EvaluationSet,
                    Mode::TrainingSet => crate::config::Contamination::TrainingSet,
                };
            }
            let report = run_experiment(&experiment)?;
            report.write_json(&out)?;
            print!("{}", report.render_text());
            Ok(())
        }
        Command::Sweep {
            config,
            epsilons,
            out,
            seed,
        } => {
            let mut experiment = ExperimentConfig::from_json_file(&config)?;
            if let Some(seed) = seed {
                experiment.seed = seed;
            }
            if let Some(text) = epsilons {
                experiment.epsilon_sweep = parse_epsilons(&text)?;
            }
            experiment.validate()?;
            let data = load_data(&experiment)?;
            let spec = SplitSpec {
                ratios: experiment.split.ratios,
                seed: experiment.split_seed(),
            };
            let (train, _pool, test) = split(&data.set, &spec)?;
            let model = fit_least_squares(&train)?;
            let undefended = metrics_on(&model, test.records())?;
            let attack = AttackConfig {
                seed: experiment.attack_seed(),
                ..experiment.attack.clone()
            };
            let rows = sweep_epsilon(&model, &test, &attack, undefended, &experiment.epsilon_sweep)?;
            #[derive(serde::Serialize)]
            struct SweepOutput {
                epsilon_sweep: Vec<crate::report::SweepRow>,
            }
            let mut text = serde_json::to_string_pretty(&SweepOutput { epsilon_sweep: rows })
                .map_err(|e| PipelineError::Data(e.to_string()))?;
            text.push('\n');
            write_text(&out, &text)?;
            Ok(())
        }
        Command::PlotData {
            report,
            data,
            kind,
            out,
            bins,
        } => {
            let text = match kind {
                PlotKind::Histogram | PlotKind::Correlation => {
                    let path = data.ok_or_else(|| {
                        PipelineError::Config(format!("--data is required for {kind:?} plots"))
                    })?;
                    let set = load_csv(&path)?;
                    match kind {
                        PlotKind::Histogram => histogram_plot(&set, bins)?,
                        _ => correlation_plot(&set)?,
                    }
                }
                PlotKind::ScenarioTrace | PlotKind::Sweep => {
                    let path = report.ok_or_else(|| {
                        PipelineError::Config(format!("--report is required for {kind:?} plots"))
                    })?;
                    let report = ExperimentReport::from_json_file(&path)?;
                    match kind {
                        PlotKind::ScenarioTrace => trace_plot(&report)?,
                        _ => sweep_plot(&report)?,
                    }
                }
            };
            write_text(&out, &text)?;
            Ok(())
        }
    }
}
