//! Exponential-mechanism selection, budget allocation, and the
//! differentially private personal-best update.
//!
//! Each run splits its total budget evenly: `ε_r = ε / r` per iteration and
//! `ε_m = ε_r / m` per individual selection, so sequential composition over
//! all `r·m` selections spends exactly `ε`. A selection between a particle's
//! current position and its personal best reduces the exponential mechanism
//! to a single logistic draw, computed in log-space so large budgets saturate
//! cleanly instead of overflowing.

use serde::Serialize;

use crate::domain::{Bounds, PositionVector};
use crate::error::{Error, Result};
use crate::objective::{score, Dataset, SensitivityBound, SensitivityMode};
use crate::rng::RngStream;

/// One charged selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub iteration: usize,
    pub individual: usize,
    pub epsilon_spent: f64,
    pub chosen_index: u8,
}

/// Append-only account of budget consumption for one run.
///
/// A charge that would exceed the total (i.e. push the entry count past
/// `r·m`) aborts before the selection happens.
#[derive(Debug, Clone)]
pub struct BudgetLedger {
    total_epsilon: f64,
    iterations: usize,
    population: usize,
    eps_per_selection: f64,
    consumed: f64,
    log: Vec<LedgerEntry>,
}

/// Initialize a ledger, returning the per-selection budget `ε/(r·m)`.
pub fn allocate(epsilon: f64, r: usize, m: usize) -> Result<BudgetLedger> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Config(format!(
            "privacy budget must be positive and finite, got {epsilon}"
        )));
    }
    if r == 0 || m == 0 {
        return Err(Error::Config(format!(
            "iteration and population counts must be >= 1 (got r={r}, m={m})"
        )));
    }
    Ok(BudgetLedger {
        total_epsilon: epsilon,
        iterations: r,
        population: m,
        eps_per_selection: epsilon / (r as f64 * m as f64),
        consumed: 0.0,
        log: Vec::with_capacity(r * m),
    })
}

impl BudgetLedger {
    pub fn total_epsilon(&self) -> f64 {
        self.total_epsilon
    }

    pub fn eps_per_selection(&self) -> f64 {
        self.eps_per_selection
    }

    /// Per-iteration budget `ε / r`.
    pub fn eps_per_iteration(&self) -> f64 {
        self.total_epsilon / self.iterations as f64
    }

    pub fn consumed(&self) -> f64 {
        self.consumed
    }

    pub fn log(&self) -> &[LedgerEntry] {
        &self.log
    }

    pub fn population(&self) -> usize {
        self.population
    }

    /// Record one selection charge. Fails *before* the charge if the run
    /// would overdraw its `r·m` selection allowance.
    pub fn charge(&mut self, iteration: usize, individual: usize, chosen_index: u8) -> Result<()> {
        if self.log.len() >= self.iterations * self.population {
            return Err(Error::BudgetExhausted(format!(
                "selection at iteration {iteration}, individual {individual} would exceed \
                 the {} x {} allowance of epsilon = {}",
                self.iterations, self.population, self.total_epsilon
            )));
        }
        self.consumed += self.eps_per_selection;
        self.log.push(LedgerEntry {
            iteration,
            individual,
            epsilon_spent: self.eps_per_selection,
            chosen_index,
        });
        Ok(())
    }

    /// CSV export: `iteration,individual,epsilon_spent,chosen_index`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,individual,epsilon_spent,chosen_index\n");
        for e in &self.log {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.iteration, e.individual, e.epsilon_spent, e.chosen_index
            ));
        }
        out
    }
}

/// Result of one two-candidate exponential-mechanism draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionOutcome {
    pub chosen_index: u8,
    pub prob_of_index0: f64,
    pub delta_q_used: f64,
}

/// Choose between scores `q0` and `q1` with probability proportional to
/// `exp(ε_m·q/(2Δq))`, as one logistic draw:
/// `P[index 0] = 1 / (1 + exp(ε_m·(q1 − q0)/(2Δq)))`.
///
/// Consumes exactly one uniform draw; index 0 wins iff the draw is strictly
/// below `P[index 0]`.
pub fn exp_mech_select(
    q0: f64,
    q1: f64,
    delta_q: SensitivityBound,
    eps_m: f64,
    rng: &mut RngStream,
) -> Result<SelectionOutcome> {
    if !(delta_q.0.is_finite() && delta_q.0 > 0.0) {
        return Err(Error::Domain(format!(
            "sensitivity bound must be positive, got {}",
            delta_q.0
        )));
    }
    if !q0.is_finite() || !q1.is_finite() {
        return Err(Error::Domain(format!(
            "scores must be finite, got q0={q0}, q1={q1}"
        )));
    }
    if !(eps_m.is_finite() && eps_m >= 0.0) {
        return Err(Error::Domain(format!(
            "per-selection budget must be non-negative, got {eps_m}"
        )));
    }
    let prob_of_index0 = 1.0 / (1.0 + (eps_m * (q1 - q0) / (2.0 * delta_q.0)).exp());
    let u = rng.next_uniform();
    Ok(SelectionOutcome {
        chosen_index: if u < prob_of_index0 { 0 } else { 1 },
        prob_of_index0,
        delta_q_used: delta_q.0,
    })
}

/// Sensitivity configuration for personal-best selections.
#[derive(Debug, Clone, Copy)]
pub struct SensitivitySpec {
    pub mode: SensitivityMode,
    pub bounds: Bounds,
}

impl SensitivitySpec {
    pub fn bound_for(
        &self,
        candidates: &[PositionVector],
        a: f64,
        d_dim: usize,
    ) -> Result<SensitivityBound> {
        crate::objective::sensitivity_bound(candidates, a, self.mode, self.bounds, d_dim)
    }
}

/// Algorithm 2: per individual, pick between its current position and its
/// personal best with the exponential mechanism at `ε_m = ε_r / m`.
///
/// Individuals are processed in index order; each consumes one mechanism-
/// stream draw and one ledger charge, so a full call spends `ε_r`.
pub fn dp_update_pbest(
    d: &Dataset,
    population: &[PositionVector],
    pbest: &[PositionVector],
    eps_r: f64,
    sens: SensitivitySpec,
    ledger: &mut BudgetLedger,
    iteration: usize,
    rng: &mut RngStream,
) -> Result<Vec<PositionVector>> {
    if population.len() != pbest.len() {
        return Err(Error::Domain(format!(
            "population ({}) and pbest ({}) lengths differ",
            population.len(),
            pbest.len()
        )));
    }
    if !(eps_r.is_finite() && eps_r > 0.0) {
        return Err(Error::Domain(format!(
            "per-iteration budget must be positive, got {eps_r}"
        )));
    }
    let m = population.len();
    let eps_m = eps_r / m as f64;
    let mut updated = Vec::with_capacity(m);
    for (i, (current, best)) in population.iter().zip(pbest).enumerate() {
        let q_current = score(d, current)?;
        let q_best = score(d, best)?;
        let candidates = [current.clone(), best.clone()];
        let delta_q = sens.bound_for(&candidates, d.a, d.dim())?;
        let outcome = exp_mech_select(q_current, q_best, delta_q, eps_m, rng)?;
        ledger.charge(iteration, i, outcome.chosen_index)?;
        updated.push(if outcome.chosen_index == 0 {
            current.clone()
        } else {
            best.clone()
        });
    }
    Ok(updated)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mech_stream() -> RngStream {
        RngStream::fork(99, "mechanism").unwrap()
    }

    #[test]
    fn allocate_divides_evenly() {
        assert_eq!(allocate(1.0, 1, 1).unwrap().eps_per_selection(), 1.0);
        assert_eq!(allocate(100.0, 100, 100).unwrap().eps_per_selection(), 0.01);
        assert_eq!(allocate(10.0, 100, 100).unwrap().eps_per_selection(), 0.001);
    }

    #[test]
    fn allocate_rejects_bad_inputs() {
        assert!(allocate(0.0, 1, 1).is_err());
        assert!(allocate(-1.0, 1, 1).is_err());
        assert!(allocate(f64::INFINITY, 1, 1).is_err());
        assert!(allocate(1.0, 0, 1).is_err());
        assert!(allocate(1.0, 1, 0).is_err());
    }

    #[test]
    fn equal_scores_are_a_fair_coin() {
        let mut rng = mech_stream();
        let out = exp_mech_select(-0.3, -0.3, SensitivityBound(1.0), 5.0, &mut rng).unwrap();
        assert_eq!(out.prob_of_index0, 0.5);
    }

    #[test]
    fn zero_budget_is_a_fair_coin_regardless_of_scores() {
        let mut rng = mech_stream();
        let out = exp_mech_select(-0.1, -100.0, SensitivityBound(1.0), 0.0, &mut rng).unwrap();
        assert_eq!(out.prob_of_index0, 0.5);
    }

    #[test]
    fn worked_logistic_case() {
        let mut rng = mech_stream();
        let out =
            exp_mech_select(-0.5, -1.0, SensitivityBound(4.0), 0.01, &mut rng).unwrap();
        let expected = 1.0 / (1.0 + (-0.000625f64).exp());
        assert!((out.prob_of_index0 - expected).abs() < 1e-15);
        assert!((out.prob_of_index0 - 0.50015625).abs() < 1e-8);
    }

    #[test]
    fn select_consumes_exactly_one_draw() {
        let mut rng = mech_stream();
        exp_mech_select(-0.5, -1.0, SensitivityBound(4.0), 0.01, &mut rng).unwrap();
        assert_eq!(rng.draws(), 1);
    }

    #[test]
    fn select_rejects_invalid_inputs() {
        let mut rng = mech_stream();
        assert!(exp_mech_select(0.0, 0.0, SensitivityBound(0.0), 1.0, &mut rng).is_err());
        assert!(exp_mech_select(0.0, 0.0, SensitivityBound(-1.0), 1.0, &mut rng).is_err());
        assert!(exp_mech_select(f64::NAN, 0.0, SensitivityBound(1.0), 1.0, &mut rng).is_err());
    }

    #[test]
    fn probability_monotone_in_budget_when_index0_better() {
        let mut last = 0.5;
        for eps in [0.01, 0.1, 1.0, 10.0] {
            let p = 1.0 / (1.0 + (eps * (-1.0f64 - -0.5) / (2.0 * 4.0)).exp());
            assert!(p > last, "prob should increase with eps");
            last = p;
        }
    }

    #[test]
    fn empirical_frequency_matches_probability() {
        let mut rng = mech_stream();
        let (q0, q1, dq, eps) = (-0.2f64, -0.8, 2.0, 3.0);
        let p = 1.0 / (1.0 + (eps * (q1 - q0) / (2.0 * dq)).exp());
        let n = 10_000usize;
        let hits = (0..n)
            .filter(|_| {
                exp_mech_select(q0, q1, SensitivityBound(dq), eps, &mut rng)
                    .unwrap()
                    .chosen_index
                    == 0
            })
            .count();
        let sd = (n as f64 * p * (1.0 - p)).sqrt();
        assert!(
            ((hits as f64) - n as f64 * p).abs() <= 4.0 * sd,
            "observed {hits} vs expected {}",
            n as f64 * p
        );
    }

    #[test]
    fn huge_budget_saturates_to_greedy() {
        let mut rng = mech_stream();
        for _ in 0..100 {
            let out = exp_mech_select(-0.1, -0.9, SensitivityBound(4.0), 1e12, &mut rng).unwrap();
            assert_eq!(out.prob_of_index0, 1.0);
            assert_eq!(out.chosen_index, 0);
        }
    }

    fn toy_dataset() -> Dataset {
        Dataset::new(vec![vec![0.5], vec![-0.5], vec![1.0]], vec![0.4, -0.4, 0.9], 1.0).unwrap()
    }

    fn sens() -> SensitivitySpec {
        SensitivitySpec {
            mode: SensitivityMode::PerPair,
            bounds: Bounds::default(),
        }
    }

    #[test]
    fn identical_candidates_leave_pbest_unchanged_but_spend_budget() {
        let d = toy_dataset();
        let pop: Vec<PositionVector> = vec![
            PositionVector::new(vec![0.2]),
            PositionVector::new(vec![-0.6]),
        ];
        let mut ledger = allocate(0.5, 1, 2).unwrap();
        let mut rng = mech_stream();
        let updated =
            dp_update_pbest(&d, &pop, &pop, 0.5, sens(), &mut ledger, 0, &mut rng).unwrap();
        assert_eq!(updated, pop);
        assert_eq!(ledger.log().len(), 2);
        assert!((ledger.consumed() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ledger_delta_matches_accounting_identity() {
        let d = toy_dataset();
        let pop: Vec<PositionVector> = (0..5)
            .map(|i| PositionVector::new(vec![0.1 * i as f64]))
            .collect();
        let pbest: Vec<PositionVector> = (0..5)
            .map(|i| PositionVector::new(vec![-0.1 * i as f64]))
            .collect();
        let mut ledger = allocate(0.5, 1, 5).unwrap();
        let mut rng = mech_stream();
        dp_update_pbest(&d, &pop, &pbest, 0.5, sens(), &mut ledger, 0, &mut rng).unwrap();
        assert_eq!(ledger.log().len(), 5);
        assert!(ledger.log().iter().all(|e| (e.epsilon_spent - 0.1).abs() < 1e-15));
        assert!((ledger.consumed() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn saturated_budget_always_takes_the_better_candidate() {
        let d = toy_dataset();
        // w = 0.9 fits y ~= 0.8 x well; w = -1 fits badly.
        let pop = vec![PositionVector::new(vec![0.9])];
        let pbest = vec![PositionVector::new(vec![-1.0])];
        let mut ledger = allocate(1e12, 1, 1).unwrap();
        let mut rng = mech_stream();
        let updated =
            dp_update_pbest(&d, &pop, &pbest, 1e12, sens(), &mut ledger, 0, &mut rng).unwrap();
        assert_eq!(updated, pop);
    }

    #[test]
    fn overdraw_aborts_before_charging() {
        let mut ledger = allocate(1.0, 1, 2).unwrap();
        ledger.charge(0, 0, 0).unwrap();
        ledger.charge(0, 1, 1).unwrap();
        let consumed = ledger.consumed();
        let err = ledger.charge(1, 0, 0).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted(_)));
        assert_eq!(ledger.consumed(), consumed);
        assert_eq!(ledger.log().len(), 2);
    }

    #[test]
    fn length_mismatch_rejected() {
        let d = toy_dataset();
        let pop = vec![PositionVector::new(vec![0.1])];
        let pbest: Vec<PositionVector> = vec![];
        let mut ledger = allocate(1.0, 1, 1).unwrap();
        let mut rng = mech_stream();
        assert!(dp_update_pbest(&d, &pop, &pbest, 1.0, sens(), &mut ledger, 0, &mut rng).is_err());
    }

    #[test]
    fn ledger_csv_has_header_and_rows() {
        let mut ledger = allocate(1.0, 1, 2).unwrap();
        ledger.charge(0, 0, 1).unwrap();
        let csv = ledger.to_csv();
        assert!(csv.starts_with("iteration,individual,epsilon_spent,chosen_index\n"));
        assert!(csv.contains("0,0,0.5,1"));
    }
}
