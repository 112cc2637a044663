//! Batch experiment runner: ε sweeps across algorithms with repeated k-fold
//! cross-validation, CSV results, summaries, and plot-series emission.
//!
//! Per-cell seeds are derived deterministically from the master seed and the
//! cell identity `(algorithm, repeat, fold)` — never from ε or the privacy
//! flag — so a private run and its non-private twin share the same dynamics
//! stream and differ only through mechanism-stream selections.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::behaviors::{BehaviorKind, BehaviorSpec};
use crate::data::{kfold, load_csv, normalize, synth_linear, FoldPlan, TargetColumn};
use crate::domain::{Bounds, PositionVector};
use crate::error::{Error, Result};
use crate::objective::{rmse_of, Dataset, SensitivityMode};
use crate::protocol::{run, RunConfig};
use crate::rng::RngStream;

/// Where the experiment's data comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DataSource {
    File {
        path: PathBuf,
        #[serde(default)]
        target: TargetColumn,
    },
    Synthetic {
        n: usize,
        d: usize,
        noise_sd: f64,
    },
}

/// Which privacy variants to sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrivacySelection {
    Private,
    NonPrivate,
    Both,
}

impl PrivacySelection {
    fn variants(self) -> Vec<bool> {
        match self {
            PrivacySelection::Private => vec![true],
            PrivacySelection::NonPrivate => vec![false],
            PrivacySelection::Both => vec![false, true],
        }
    }
}

fn default_iterations() -> usize {
    100
}
fn default_population() -> usize {
    100
}
fn default_folds() -> usize {
    10
}
fn default_repeats() -> usize {
    10
}
fn default_bounds() -> f64 {
    1.0
}
fn default_true() -> bool {
    true
}

/// Full sweep specification; JSON-serializable for config files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: DataSource,
    pub algorithms: Vec<BehaviorKind>,
    pub privacy: PrivacySelection,
    pub epsilon_grid: Vec<f64>,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_population")]
    pub population: usize,
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    pub seed: u64,
    #[serde(default = "default_bounds")]
    pub bounds_w_max: f64,
    #[serde(default = "SensitivityMode::default_per_pair")]
    pub sensitivity_mode: SensitivityMode,
    #[serde(default)]
    pub strict_disclosure: bool,
    /// When false, `runtime_ms` is written as 0 so result files are
    /// byte-reproducible.
    #[serde(default = "default_true")]
    pub record_runtime: bool,
    /// When set, each private run's budget ledger is written here as
    /// `{algorithm}_eps{eps}_rep{repeat}_fold{fold}.csv`.
    #[serde(default)]
    pub ledger_dir: Option<PathBuf>,
}

impl SensitivityMode {
    fn default_per_pair() -> Self {
        SensitivityMode::PerPair
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.privacy != PrivacySelection::NonPrivate {
            if self.epsilon_grid.is_empty() {
                return Err(Error::Config(
                    "private sweeps need a non-empty epsilon grid".into(),
                ));
            }
            if self.epsilon_grid.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
                return Err(Error::Config("epsilon grid values must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// ε column values: non-private-only sweeps without a grid emit one row
    /// at ε = 0.
    fn epsilon_points(&self) -> Vec<f64> {
        if self.epsilon_grid.is_empty() {
            vec![0.0]
        } else {
            self.epsilon_grid.clone()
        }
    }
}

/// One (cell, repeat, fold) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub algorithm: BehaviorKind,
    pub private: bool,
    pub epsilon: f64,
    pub repeat: usize,
    pub fold: usize,
    pub rmse: f64,
    pub runtime_ms: u64,
    pub seed: u64,
}

impl ResultRecord {
    fn key(&self) -> (String, bool, u64, usize, usize) {
        (
            self.algorithm.name().to_string(),
            self.private,
            self.epsilon.to_bits(),
            self.repeat,
            self.fold,
        )
    }
}

/// Cell seed: SHA-256 over (master seed, algorithm, repeat, fold).
pub fn derive_cell_seed(master: u64, algorithm: BehaviorKind, repeat: usize, fold: usize) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(algorithm.name().as_bytes());
    hasher.update((repeat as u64).to_le_bytes());
    hasher.update((fold as u64).to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// Records plus per-cell failures (the sweep continues past failing cells).
#[derive(Debug, Default)]
pub struct ExperimentOutcome {
    pub records: Vec<ResultRecord>,
    pub failures: Vec<String>,
    pub fold_plan: Option<FoldPlan>,
}

/// Materialize the configured dataset. Synthetic sources draw a true weight
/// vector with L1 norm 0.8 from the data stream, so noiseless targets never
/// clip and the optimum RMSE is exactly 0.
pub fn build_dataset(cfg: &ExperimentConfig) -> Result<(Dataset, RngStream)> {
    let mut data_stream = RngStream::fork(cfg.seed, "data")?;
    let dataset = match &cfg.source {
        DataSource::File { path, target } => {
            let table = load_csv(path, target)?;
            normalize(&table)?.0
        }
        DataSource::Synthetic { n, d, noise_sd } => {
            let raw: Vec<f64> = (0..*d).map(|_| data_stream.next_uniform_in(-1.0, 1.0)).collect();
            let l1: f64 = raw.iter().map(|c| c.abs()).sum();
            let scale = if l1 > 0.0 { 0.8 / l1 } else { 0.0 };
            let w_true = PositionVector::new(raw.into_iter().map(|c| c * scale).collect());
            synth_linear(*n, *d, &w_true, *noise_sd, &mut data_stream)?
        }
    };
    Ok((dataset, data_stream))
}

struct WorkItem {
    algorithm: BehaviorKind,
    repeat: usize,
    fold: usize,
}

struct ItemOutcome {
    records: Vec<ResultRecord>,
    failure: Option<String>,
}

fn run_item(
    cfg: &ExperimentConfig,
    dataset: &Dataset,
    plan: &FoldPlan,
    item: &WorkItem,
    skip: &HashSet<(String, bool, u64, usize, usize)>,
) -> ItemOutcome {
    let mut out = ItemOutcome {
        records: Vec::new(),
        failure: None,
    };
    let cell_seed = derive_cell_seed(cfg.seed, item.algorithm, item.repeat, item.fold);
    let (train_idx, test_idx) = plan.split(item.repeat, item.fold);
    let mut runs: Vec<(bool, f64)> = Vec::new();
    for private in cfg.privacy.variants() {
        if private {
            for &eps in &cfg.epsilon_grid {
                runs.push((true, eps));
            }
        } else {
            runs.push((false, 0.0));
        }
    }
    let (train, test) = match (dataset.subset(&train_idx), dataset.subset(&test_idx)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            out.failure = Some(format!(
                "{} repeat {} fold {}: degenerate split",
                item.algorithm, item.repeat, item.fold
            ));
            return out;
        }
    };
    let bounds = match Bounds::new(cfg.bounds_w_max) {
        Ok(b) => b,
        Err(e) => {
            out.failure = Some(e.to_string());
            return out;
        }
    };
    for (private, eps) in runs {
        let emit_epsilons: Vec<f64> = if private {
            vec![eps]
        } else {
            cfg.epsilon_points()
        };
        if emit_epsilons.iter().all(|e| {
            skip.contains(&(
                item.algorithm.name().to_string(),
                private,
                e.to_bits(),
                item.repeat,
                item.fold,
            ))
        }) {
            continue;
        }
        let run_cfg = RunConfig {
            epsilon: eps,
            iterations: cfg.iterations,
            population_size: cfg.population,
            behavior: BehaviorSpec::new(item.algorithm),
            bounds,
            seed: cell_seed,
            private,
            strict_disclosure: cfg.strict_disclosure,
            sensitivity_mode: cfg.sensitivity_mode,
        };
        let started = Instant::now();
        match run(&run_cfg, &train).and_then(|r| {
            if private {
                if let (Some(dir), Some(ledger)) = (&cfg.ledger_dir, &r.ledger) {
                    std::fs::create_dir_all(dir)?;
                    let name = format!(
                        "{}_eps{}_rep{}_fold{}.csv",
                        item.algorithm.name().to_ascii_lowercase(),
                        eps,
                        item.repeat,
                        item.fold
                    );
                    std::fs::write(dir.join(name), ledger.to_csv())?;
                }
            }
            rmse_of(&test, &r.gbest)
        }) {
            Ok(rmse) => {
                let runtime_ms = if cfg.record_runtime {
                    started.elapsed().as_millis() as u64
                } else {
                    0
                };
                // Non-private results are ε-independent; duplicate them
                // across the grid so every plotted series has a value per ε.
                for e in emit_epsilons {
                    out.records.push(ResultRecord {
                        algorithm: item.algorithm,
                        private,
                        epsilon: e,
                        repeat: item.repeat,
                        fold: item.fold,
                        rmse,
                        runtime_ms,
                        seed: cell_seed,
                    });
                }
            }
            Err(e) => {
                out.failure = Some(format!(
                    "{} private={private} eps={eps} repeat {} fold {}: {e}",
                    item.algorithm, item.repeat, item.fold
                ));
            }
        }
    }
    out
}

/// Run the full grid. `skip` holds result keys already present in a partial
/// results file; matching work is not recomputed.
pub fn run_experiment_resumable(
    cfg: &ExperimentConfig,
    skip: &HashSet<(String, bool, u64, usize, usize)>,
) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let (dataset, mut data_stream) = build_dataset(cfg)?;
    let plan = kfold(dataset.n(), cfg.folds, cfg.repeats, &mut data_stream)?;

    let items: Vec<WorkItem> = cfg
        .algorithms
        .iter()
        .flat_map(|&algorithm| {
            (0..cfg.repeats).flat_map(move |repeat| {
                (0..cfg.folds).map(move |fold| WorkItem {
                    algorithm,
                    repeat,
                    fold,
                })
            })
        })
        .collect();

    let slots: Vec<Mutex<Option<ItemOutcome>>> =
        (0..items.len()).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(items.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let outcome = run_item(cfg, &dataset, &plan, &items[i], skip);
                *slots[i].lock().unwrap() = Some(outcome);
            });
        }
    });

    let mut outcome = ExperimentOutcome {
        fold_plan: Some(plan),
        ..Default::default()
    };
    for slot in slots {
        let item = slot.into_inner().unwrap().expect("every slot filled");
        outcome.records.extend(item.records);
        outcome.failures.extend(item.failure);
    }
    outcome.records.sort_by(|a, b| a.key().cmp(&b.key()));
    Ok(outcome)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    run_experiment_resumable(cfg, &HashSet::new())
}

const RESULTS_HEADER: &str = "algorithm,private,epsilon,repeat,fold,rmse,runtime_ms,seed";

/// Render records as the results CSV (stable field formatting).
pub fn records_to_csv(records: &[ResultRecord]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.algorithm, r.private, r.epsilon, r.repeat, r.fold, r.rmse, r.runtime_ms, r.seed
        ));
    }
    out
}

/// Parse a results CSV produced by [`records_to_csv`].
pub fn records_from_csv(content: &str) -> Result<Vec<ResultRecord>> {
    let mut lines = content.lines();
    match lines.next() {
        Some(h) if h == RESULTS_HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "unexpected results header: {other:?}"
            )))
        }
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Parse(format!("results row {} malformed", i + 2)));
        }
        let parse_err = |what: &str| Error::Parse(format!("results row {}: bad {what}", i + 2));
        records.push(ResultRecord {
            algorithm: fields[0].parse().map_err(|_| parse_err("algorithm"))?,
            private: fields[1].parse().map_err(|_| parse_err("private"))?,
            epsilon: fields[2].parse().map_err(|_| parse_err("epsilon"))?,
            repeat: fields[3].parse().map_err(|_| parse_err("repeat"))?,
            fold: fields[4].parse().map_err(|_| parse_err("fold"))?,
            rmse: fields[5].parse().map_err(|_| parse_err("rmse"))?,
            runtime_ms: fields[6].parse().map_err(|_| parse_err("runtime_ms"))?,
            seed: fields[7].parse().map_err(|_| parse_err("seed"))?,
        });
    }
    Ok(records)
}

/// Keys already present in an existing results file (for resumable sweeps).
pub fn completed_keys(path: &Path) -> Result<HashSet<(String, bool, u64, usize, usize)>> {
    if !path.exists() {
        return Ok(HashSet::new());
    }
    let content = std::fs::read_to_string(path)?;
    Ok(records_from_csv(&content)?
        .iter()
        .map(ResultRecord::key)
        .collect())
}

/// Append new records to a results CSV, writing the header if absent.
pub fn append_results(path: &Path, records: &[ResultRecord]) -> Result<()> {
    let existing = completed_keys(path)?;
    let fresh: Vec<&ResultRecord> = records
        .iter()
        .filter(|r| !existing.contains(&r.key()))
        .collect();
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    if existing.is_empty() && file.metadata()?.len() == 0 {
        writeln!(file, "{RESULTS_HEADER}")?;
    }
    for r in fresh {
        write!(
            file,
            "{}",
            records_to_csv(std::slice::from_ref(r))
                .lines()
                .nth(1)
                .map(|l| format!("{l}\n"))
                .unwrap_or_default()
        )?;
    }
    Ok(())
}

/// Mean RMSE per (algorithm, private, ε).
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: BehaviorKind,
    pub private: bool,
    pub epsilon: f64,
    pub mean_rmse: f64,
    pub count: usize,
}

/// Average over repeats × folds per key; errors on empty input.
pub fn summarize(records: &[ResultRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::Domain("cannot summarize zero records".into()));
    }
    let mut keys: Vec<(BehaviorKind, bool, u64)> = records
        .iter()
        .map(|r| (r.algorithm, r.private, r.epsilon.to_bits()))
        .collect();
    keys.sort_by(|a, b| (a.0.name(), a.1, f64::from_bits(a.2)).partial_cmp(&(b.0.name(), b.1, f64::from_bits(b.2))).unwrap());
    keys.dedup();
    Ok(keys
        .into_iter()
        .map(|(algorithm, private, eps_bits)| {
            let epsilon = f64::from_bits(eps_bits);
            let matching: Vec<&ResultRecord> = records
                .iter()
                .filter(|r| {
                    r.algorithm == algorithm
                        && r.private == private
                        && r.epsilon.to_bits() == eps_bits
                })
                .collect();
            let mean_rmse =
                matching.iter().map(|r| r.rmse).sum::<f64>() / matching.len() as f64;
            SummaryRow {
                algorithm,
                private,
                epsilon,
                mean_rmse,
                count: matching.len(),
            }
        })
        .collect())
}

pub fn summary_to_csv(summary: &[SummaryRow]) -> String {
    let mut out = String::from("algorithm,private,epsilon,mean_rmse,count\n");
    for s in summary {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.algorithm, s.private, s.epsilon, s.mean_rmse, s.count
        ));
    }
    out
}

/// Write one tab-separated `(epsilon, mean_rmse)` series per
/// (algorithm, private) into `dir`. Returns the written paths.
pub fn emit_plot_data(summary: &[SummaryRow], dir: &Path) -> Result<Vec<PathBuf>> {
    if summary.is_empty() {
        return Err(Error::Domain("cannot emit plot data for an empty summary".into()));
    }
    std::fs::create_dir_all(dir)?;
    let mut series_keys: Vec<(BehaviorKind, bool)> =
        summary.iter().map(|s| (s.algorithm, s.private)).collect();
    series_keys.sort_by_key(|(a, p)| (a.name(), *p));
    series_keys.dedup();
    let mut paths = Vec::new();
    for (algorithm, private) in series_keys {
        let mut rows: Vec<(f64, f64)> = summary
            .iter()
            .filter(|s| s.algorithm == algorithm && s.private == private)
            .map(|s| (s.epsilon, s.mean_rmse))
            .collect();
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let name = format!(
            "{}_{}.tsv",
            algorithm.name().to_ascii_lowercase(),
            if private { "private" } else { "nonprivate" }
        );
        let path = dir.join(name);
        let mut content = String::from("epsilon\tmean_rmse\n");
        for (eps, rmse) in rows {
            content.push_str(&format!("{eps}\t{rmse}\n"));
        }
        std::fs::write(&path, content)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Parse a plot series file back into `(epsilon, mean_rmse)` pairs.
pub fn parse_plot_series(path: &Path) -> Result<Vec<(f64, f64)>> {
    let content = std::fs::read_to_string(path)?;
    let mut lines = content.lines();
    if lines.next() != Some("epsilon\tmean_rmse") {
        return Err(Error::Parse("missing plot series header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let mut parts = l.split('\t');
            let eps = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad series line {l:?}")))?;
            let rmse = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad series line {l:?}")))?;
            Ok((eps, rmse))
        })
        .collect()
}
