use std::path::{Path, PathBuf};

use maqa_core::engine::{
    count_resources, oracle_aggregate, run_maqa_with_oracle, verify_appendix, MaqaSpec,
    OracleAggregate, APPENDIX_TOLERANCE,
};
use maqa_core::ensemble::{run_bagging_demo, run_ensemble};
use maqa_core::qslp::{qslp_train, ToyDataset, TrainOptions};
use serde::Serialize;

use crate::config::{
    build_ensemble, build_maqa_spec, build_qslp_spec, resources_plan, EnsemblePlan,
    ExperimentConfig, ModeSpec,
};
use crate::dataset::read_dataset;
use crate::error::CliError;
use crate::report::{format_f64, sha256_hex, to_json_bytes, write_csv, write_file, Report};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub type OracleFn = fn(&MaqaSpec) -> maqa_core::Result<OracleAggregate>;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Bound on |quantum - classical| in aggregate and ensemble modes.
    pub tolerance: f64,
    /// Replaces the classical oracle in aggregate mode.
    pub oracle: Option<OracleFn>,
}

impl RunOptions {
    pub fn new(seed: u64, out_dir: impl Into<PathBuf>) -> Self {
        RunOptions {
            seed,
            out_dir: out_dir.into(),
            tolerance: DEFAULT_TOLERANCE,
            oracle: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub passed: bool,
    pub exit_code: u8,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Seed precedence: command line, then config, then `MAQA_SEED`, then 0.
pub fn resolve_seed(
    flag: Option<u64>,
    config: Option<u64>,
    env: Option<&str>,
) -> Result<u64, CliError> {
    if let Some(s) = flag.or(config) {
        return Ok(s);
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("MAQA_SEED=`{v}` is not a u64"))),
        None => Ok(0),
    }
}

/// Config as embedded in reports: the effective seed filled in and the output
/// location dropped, so the hash depends only on what was computed.
fn provenance(config: &ExperimentConfig, seed: u64) -> (ExperimentConfig, String) {
    let mut c = config.clone();
    c.seed = Some(seed);
    c.output_path = None;
    let hash = sha256_hex(&c.to_canonical_json());
    (c, hash)
}

fn check_tolerance(tol: f64) -> Result<(), CliError> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "tolerance must be finite and >= 0, got {tol}"
        )));
    }
    Ok(())
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl Writer<'_> {
    fn json<R: Serialize>(
        &mut self,
        name: &str,
        config: &ExperimentConfig,
        seed: u64,
        tolerance: Option<f64>,
        passed: bool,
        result: &R,
    ) -> Result<(), CliError> {
        let (embedded, hash) = provenance(config, seed);
        let report = Report {
            mode: config.mode.as_str(),
            seed,
            config_hash: &hash,
            config: &embedded,
            tolerance,
            passed,
            result,
        };
        let path = self.dir.join(name);
        write_file(&path, &to_json_bytes(&report))?;
        self.files.push(path);
        Ok(())
    }

    fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        write_csv(&path, header, rows)?;
        self.files.push(path);
        Ok(())
    }
}

#[derive(Serialize)]
struct QslpResult<'a> {
    dataset: &'a str,
    dataset_size: usize,
    initial_loss: f64,
    final_loss: f64,
    report: &'a maqa_core::qslp::TrainReport,
}

#[derive(Serialize)]
struct AppendixResult {
    seeds: Vec<u64>,
    max_diff: f64,
    reports: Vec<maqa_core::engine::AppendixReport>,
}

#[derive(Serialize)]
struct ResourcesResult {
    n: usize,
    rows: Vec<maqa_core::engine::ResourceReport>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum EnsembleResult {
    Bagging(maqa_core::ensemble::BaggingReport),
    Circuit(maqa_core::ensemble::EnsembleRun),
}

/// Executes `config` and writes its report files into `opts.out_dir`.
pub fn run_command(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    check_tolerance(opts.tolerance)?;
    std::fs::create_dir_all(&opts.out_dir).map_err(|source| CliError::Io {
        path: opts.out_dir.clone(),
        source,
    })?;
    let seed = opts.seed;
    let mut w = Writer {
        dir: &opts.out_dir,
        files: Vec::new(),
    };
    let (passed, summary) = match &config.spec {
        ModeSpec::Aggregate(s) => {
            let spec = build_maqa_spec(s, seed)?;
            let run = run_maqa_with_oracle(&spec, opts.oracle.unwrap_or(oracle_aggregate))?;
            let a = &run.aggregate;
            let passed = a.abs_diff <= opts.tolerance;
            w.json(
                "aggregate_report.json",
                config,
                seed,
                Some(opts.tolerance),
                passed,
                &run,
            )?;
            (
                passed,
                format!(
                    "quantum {} oracle {} |diff| {:.3e} over {} trajectories",
                    a.quantum_value, a.oracle_value, a.abs_diff, run.resources.trajectory_count
                ),
            )
        }
        ModeSpec::QslpTrain(s) => {
            let spec = build_qslp_spec(s, seed)?;
            let data = if s.dataset == "toy" {
                ToyDataset::separable(seed)
            } else {
                read_dataset(Path::new(&s.dataset))?
            };
            let defaults = TrainOptions::default();
            let train = TrainOptions {
                epochs: s.epochs.unwrap_or(defaults.epochs),
                learning_rate: s.learning_rate.unwrap_or(defaults.learning_rate),
                fd_step: s.fd_step.unwrap_or(defaults.fd_step),
                seed,
            };
            let report = qslp_train(&data, &spec, &train)?;
            let rows: Vec<Vec<String>> = report
                .loss_trace
                .iter()
                .enumerate()
                .map(|(e, &l)| vec![e.to_string(), format_f64(l)])
                .collect();
            w.csv("loss_trace.csv", &["epoch", "loss"], &rows)?;
            let result = QslpResult {
                dataset: &s.dataset,
                dataset_size: data.len(),
                initial_loss: report.initial_loss(),
                final_loss: report.final_loss(),
                report: &report,
            };
            w.json("qslp_train_report.json", config, seed, None, true, &result)?;
            (
                true,
                format!(
                    "loss {} -> {} after {} epochs",
                    result.initial_loss, result.final_loss, report.epochs
                ),
            )
        }
        ModeSpec::Ensemble(s) => {
            let (result, diff) = match build_ensemble(s, seed)? {
                EnsemblePlan::Bagging(spec) => {
                    let r = run_bagging_demo(&spec, &s.x)?;
                    let diff = r.abs_diff;
                    (EnsembleResult::Bagging(r), diff)
                }
                EnsemblePlan::Circuit(spec) => {
                    let r = run_ensemble(&spec, &s.x)?;
                    let diff = r.abs_diff;
                    (EnsembleResult::Circuit(r), diff)
                }
            };
            let passed = diff <= opts.tolerance;
            w.json(
                "ensemble_report.json",
                config,
                seed,
                Some(opts.tolerance),
                passed,
                &result,
            )?;
            (passed, format!("|quantum - classical| {diff:.3e}"))
        }
        ModeSpec::VerifyAppendix(s) => {
            let count = s.seeds.unwrap_or(1).max(1);
            let seeds: Vec<u64> = (0..count).map(|i| seed.wrapping_add(i)).collect();
            let reports = seeds
                .iter()
                .map(|&sd| verify_appendix(sd))
                .collect::<maqa_core::Result<Vec<_>>>()?;
            let max_diff = reports
                .iter()
                .flat_map(|r| r.blocks.iter().map(|b| b.max_diff.max(b.unitary_diff)))
                .chain(reports.iter().map(|r| r.preparation_diff))
                .fold(0.0, f64::max);
            let passed = reports.iter().all(|r| r.passed);
            let checks: usize = reports.iter().map(|r| r.blocks.len()).sum();
            let result = AppendixResult {
                seeds,
                max_diff,
                reports,
            };
            w.json(
                "verify_appendix_report.json",
                config,
                seed,
                Some(APPENDIX_TOLERANCE),
                passed,
                &result,
            )?;
            (
                passed,
                format!("{checks} trajectory checks, max diff {max_diff:.3e}"),
            )
        }
        ModeSpec::Resources(s) => {
            let (lo, hi, n, params) = resources_plan(s)?;
            let rows = (lo..=hi)
                .map(|d| count_resources(&MaqaSpec::identity(d, n), params))
                .collect::<maqa_core::Result<Vec<_>>>()?;
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let cost = r.classical_cost_model.map_or(f64::NAN, |m| m.cost);
                    vec![
                        r.d.to_string(),
                        r.controlled_g_applications.to_string(),
                        r.trajectory_count.to_string(),
                        format_f64(cost),
                    ]
                })
                .collect();
            w.csv(
                "resources.csv",
                &["d", "controlled_gates", "trajectories", "classical_cost"],
                &table,
            )?;
            let result = ResourcesResult { n, rows };
            w.json("resources_report.json", config, seed, None, true, &result)?;
            (true, format!("d = {lo}..={hi}"))
        }
    };
    Ok(RunOutcome {
        passed,
        exit_code: if passed { 0 } else { 2 },
        files: w.files,
        summary: format!("{}: {summary}", config.mode),
    })
}
