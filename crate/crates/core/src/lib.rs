//! Differentially private swarm optimization for outsourced linear
//! regression.
//!
//! A data owner keeps the training set local and answers fitness queries; an
//! outsourcer runs one of six swarm behaviors (PSO, CPSO, SPSO, GWO, WOA,
//! SOA) against those answers. When privacy is on, each personal-best
//! selection is made with the exponential mechanism under a per-selection
//! budget of ε / (r·m), so the whole run satisfies ε-differential privacy by
//! sequential composition.
//!
//! Module map:
//! - [`rng`]: labeled, draw-counted deterministic random streams
//! - [`domain`]: positions, search bounds, clamping
//! - [`objective`]: datasets, MSE score, sensitivity bounds, RMSE
//! - [`privacy`]: exponential mechanism, budget ledger
//! - [`behaviors`]: the six swarm update rules
//! - [`protocol`]: the two-party wire protocol and optimization loop
//! - [`data`]: CSV loading, normalization, k-fold plans, synthetic data
//! - [`experiment`]: ε sweeps, result CSVs, summaries, plot series

pub mod behaviors;
pub mod data;
pub mod domain;
pub mod error;
pub mod experiment;
pub mod objective;
pub mod privacy;
pub mod protocol;
pub mod rng;

pub use behaviors::{BehaviorKind, BehaviorSpec, SwarmState};
pub use data::{kfold, load_csv, normalize, synth_linear, FoldPlan, TargetColumn};
pub use domain::{clamp, Bounds, PositionVector};
pub use error::{Error, Result};
pub use experiment::{
    run_experiment, summarize, DataSource, ExperimentConfig, PrivacySelection, ResultRecord,
};
pub use objective::{
    mse_objective, rmse, rmse_of, score, sensitivity_bound, Dataset, FitnessValue,
    SensitivityBound, SensitivityMode,
};
pub use privacy::{dp_update_pbest, exp_mech_select, BudgetLedger, LedgerEntry, SelectionOutcome};
pub use protocol::{run, run_against, Evaluator, RunConfig, RunResult, UserEndpoint, WireEvaluator};
pub use rng::RngStream;
