//! `dpswarm`: run ε-sweep experiments from the command line.
//!
//! Either pass `--config experiment.json` (a serialized `ExperimentConfig`)
//! or build the configuration from flags. Results are appended to the
//! `--out` CSV; sweeps resume automatically if the file already has rows.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use dpswarm::experiment::{
    append_results, completed_keys, emit_plot_data, records_from_csv, run_experiment_resumable,
    summarize, summary_to_csv, DataSource, ExperimentConfig, PrivacySelection,
};
use dpswarm::{BehaviorKind, SensitivityMode, TargetColumn};

#[derive(Parser, Debug)]
#[command(name = "dpswarm", version, about = "Differentially private swarm optimization sweeps")]
struct Args {
    /// JSON config file mirroring ExperimentConfig; overrides all data/grid flags
    #[arg(long, conflicts_with_all = ["dataset", "synthetic"])]
    config: Option<PathBuf>,

    /// CSV dataset; the last column is the regression target
    #[arg(long, conflicts_with = "synthetic")]
    dataset: Option<PathBuf>,

    /// Synthetic linear dataset as n,d,noise_sd (e.g. 200,3,0.05)
    #[arg(long, value_name = "N,D,NOISE")]
    synthetic: Option<String>,

    /// Comma-separated algorithms: pso,cpso,spso,gwo,woa,soa (default: all)
    #[arg(long, value_delimiter = ',')]
    algorithms: Vec<BehaviorKind>,

    /// Run only private variants
    #[arg(long, conflicts_with_all = ["non_private", "both"])]
    private: bool,

    /// Run only non-private variants
    #[arg(long = "non-private", conflicts_with = "both")]
    non_private: bool,

    /// Run private and non-private twins
    #[arg(long)]
    both: bool,

    /// Comma-separated privacy budgets for the sweep
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.5, 1.0, 5.0, 10.0])]
    epsilons: Vec<f64>,

    /// Iterations per run (r)
    #[arg(long, default_value_t = 100)]
    iterations: usize,

    /// Population size (m)
    #[arg(long, default_value_t = 100)]
    population: usize,

    /// Cross-validation folds (k)
    #[arg(long, default_value_t = 10)]
    folds: usize,

    /// Repetitions of the k-fold split
    #[arg(long, default_value_t = 10)]
    repeats: usize,

    /// Master seed
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Search-space half-width: weights live in [-W, W]
    #[arg(long, default_value_t = 1.0, value_name = "W")]
    bounds: f64,

    /// Sensitivity bound: per-pair | global
    #[arg(long, default_value = "per-pair")]
    sensitivity_mode: SensitivityMode,

    /// Disclosure mode: faithful (raw fitness) | strict (ranks only)
    #[arg(long, default_value = "faithful")]
    disclosure: Disclosure,

    /// Results CSV path; existing rows are kept and their cells skipped
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,

    /// Write per-run budget ledger CSVs into this directory
    #[arg(long, value_name = "DIR")]
    ledgers: Option<PathBuf>,

    /// Write runtime_ms as 0 so output files are byte-reproducible
    #[arg(long)]
    zero_runtime: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Disclosure {
    Faithful,
    Strict,
}

fn parse_synth(spec: &str) -> Result<DataSource, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("--synthetic wants n,d,noise_sd, got {spec:?}"));
    }
    Ok(DataSource::Synthetic {
        n: parts[0].trim().parse().map_err(|e| format!("n: {e}"))?,
        d: parts[1].trim().parse().map_err(|e| format!("d: {e}"))?,
        noise_sd: parts[2].trim().parse().map_err(|e| format!("noise_sd: {e}"))?,
    })
}

fn build_config(args: &Args) -> Result<ExperimentConfig, String> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return ExperimentConfig::from_json(&text).map_err(|e| e.to_string());
    }
    let source = match (&args.dataset, &args.synthetic) {
        (Some(path), None) => DataSource::File {
            path: path.clone(),
            target: TargetColumn::Last,
        },
        (None, Some(spec)) => parse_synth(spec)?,
        (None, None) => return Err("pass --dataset, --synthetic, or --config".into()),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let privacy = if args.both {
        PrivacySelection::Both
    } else if args.non_private {
        PrivacySelection::NonPrivate
    } else {
        // --private is also the default when no privacy flag is given.
        PrivacySelection::Private
    };
    let algorithms = if args.algorithms.is_empty() {
        BehaviorKind::ALL.to_vec()
    } else {
        args.algorithms.clone()
    };
    Ok(ExperimentConfig {
        source,
        algorithms,
        privacy,
        epsilon_grid: args.epsilons.clone(),
        iterations: args.iterations,
        population: args.population,
        folds: args.folds,
        repeats: args.repeats,
        seed: args.seed,
        bounds_w_max: args.bounds,
        sensitivity_mode: args.sensitivity_mode,
        strict_disclosure: args.disclosure == Disclosure::Strict,
        record_runtime: !args.zero_runtime,
        ledger_dir: args.ledgers.clone(),
    })
}

fn run_cli(args: &Args) -> Result<(), String> {
    let cfg = build_config(args)?;
    cfg.validate().map_err(|e| e.to_string())?;

    let skip = completed_keys(&args.out).map_err(|e| e.to_string())?;
    if !skip.is_empty() {
        eprintln!("resuming: {} completed records found in {}", skip.len(), args.out.display());
    }
    let outcome = run_experiment_resumable(&cfg, &skip).map_err(|e| e.to_string())?;
    append_results(&args.out, &outcome.records).map_err(|e| e.to_string())?;
    for failure in &outcome.failures {
        eprintln!("cell failed: {failure}");
    }

    let all = records_from_csv(
        &std::fs::read_to_string(&args.out).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let summary = summarize(&all).map_err(|e| e.to_string())?;

    let stem = args
        .out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "results".into());
    let base = args.out.parent().map(PathBuf::from).unwrap_or_default();
    let summary_path = base.join(format!("{stem}_summary.csv"));
    std::fs::write(&summary_path, summary_to_csv(&summary)).map_err(|e| e.to_string())?;
    let plot_dir = base.join(format!("{stem}_plots"));
    let series = emit_plot_data(&summary, &plot_dir).map_err(|e| e.to_string())?;

    println!(
        "wrote {} records to {}; summary in {}; {} plot series in {}",
        outcome.records.len(),
        args.out.display(),
        summary_path.display(),
        series.len(),
        plot_dir.display()
    );
    if outcome.failures.is_empty() {
        Ok(())
    } else {
        Err(format!("{} cell(s) failed", outcome.failures.len()))
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run_cli(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
