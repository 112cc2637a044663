//! Two-party orchestration: the user holds the dataset and performs
//! (optionally differentially private) personal-best selection; the
//! outsourcer holds the swarm and performs interaction and position updates.
//!
//! One run is a strictly alternating sequence of evaluation requests and
//! replies. Messages cross the boundary as versioned canonical JSON; the
//! in-process path and the serialized path expose the same [`Evaluator`]
//! interface. The outsourcer side never touches the dataset: it sees only
//! the replies.

use serde::{Deserialize, Serialize};

use crate::behaviors::{step, update_gbest, BehaviorKind, BehaviorSpec, SwarmState};
use crate::domain::{Bounds, PositionVector};
use crate::error::{Error, Result};
use crate::objective::{mse_objective, Dataset, FitnessValue, SensitivityMode};
use crate::privacy::{allocate, dp_update_pbest, BudgetLedger, SensitivitySpec};
use crate::rng::RngStream;

/// Wire format version carried by every message.
pub const WIRE_VERSION: u32 = 1;

/// Parameters of a single optimization run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub iterations: usize,
    pub population_size: usize,
    pub behavior: BehaviorSpec,
    pub bounds: Bounds,
    pub seed: u64,
    pub private: bool,
    pub strict_disclosure: bool,
    pub sensitivity_mode: SensitivityMode,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 || self.population_size == 0 {
            return Err(Error::Config(format!(
                "iterations and population must be >= 1 (got r={}, m={})",
                self.iterations, self.population_size
            )));
        }
        if self.behavior.kind == BehaviorKind::Gwo && self.population_size < 3 {
            return Err(Error::Config(
                "GWO requires a population of at least 3".into(),
            ));
        }
        if self.private && !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::Config(format!(
                "private runs need a positive budget, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Outsourcer → user: the current positions to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRequest {
    pub version: u32,
    pub iteration: usize,
    pub positions: Vec<PositionVector>,
}

/// What the user discloses alongside the updated pbest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Disclosure {
    /// Paper-faithful: the fitness of every pbest entry.
    Fitness { values: Vec<f64> },
    /// Strict: only ranking information. `top3` is populated for behaviors
    /// that need a leader hierarchy (GWO).
    Ranked {
        best: usize,
        improved: bool,
        top3: Option<[usize; 3]>,
    },
}

/// User → outsourcer: updated personal bests plus the disclosure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReply {
    pub version: u32,
    pub iteration: usize,
    pub pbest: Vec<PositionVector>,
    pub disclosure: Disclosure,
}

/// Either protocol message, for the wire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Message {
    Request(EvaluationRequest),
    Reply(EvaluationReply),
}

fn validate_positions(positions: &[PositionVector], what: &str) -> Result<()> {
    if positions.is_empty() {
        return Err(Error::Parse(format!("{what} must carry at least one position")));
    }
    let d = positions[0].dim();
    for (i, p) in positions.iter().enumerate() {
        if p.dim() != d {
            return Err(Error::Parse(format!(
                "{what} position {i} has dimension {} != {d}",
                p.dim()
            )));
        }
        if !p.is_finite() {
            return Err(Error::Parse(format!(
                "{what} position {i} has a non-finite coordinate"
            )));
        }
    }
    Ok(())
}

impl Message {
    pub fn validate(&self) -> Result<()> {
        match self {
            Message::Request(req) => {
                if req.version != WIRE_VERSION {
                    return Err(Error::Parse(format!(
                        "unsupported wire version {} (expected {WIRE_VERSION})",
                        req.version
                    )));
                }
                validate_positions(&req.positions, "request")
            }
            Message::Reply(rep) => {
                if rep.version != WIRE_VERSION {
                    return Err(Error::Parse(format!(
                        "unsupported wire version {} (expected {WIRE_VERSION})",
                        rep.version
                    )));
                }
                validate_positions(&rep.pbest, "reply")?;
                match &rep.disclosure {
                    Disclosure::Fitness { values } => {
                        if values.len() != rep.pbest.len() {
                            return Err(Error::Parse(format!(
                                "reply fitness length {} != pbest length {}",
                                values.len(),
                                rep.pbest.len()
                            )));
                        }
                        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                            return Err(Error::Parse(
                                "reply fitness must be finite and non-negative".into(),
                            ));
                        }
                    }
                    Disclosure::Ranked { best, top3, .. } => {
                        if *best >= rep.pbest.len() {
                            return Err(Error::Parse(format!(
                                "best index {best} out of range for {} pbest entries",
                                rep.pbest.len()
                            )));
                        }
                        if let Some(t) = top3 {
                            if t.iter().any(|i| *i >= rep.pbest.len()) {
                                return Err(Error::Parse("top3 index out of range".into()));
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Encode a message as canonical JSON. Rejects invalid messages (including
/// NaN payloads) before any bytes are produced.
pub fn serialize_message(msg: &Message) -> Result<Vec<u8>> {
    msg.validate()?;
    serde_json::to_vec(msg).map_err(|e| Error::Parse(format!("encode failed: {e}")))
}

/// Decode and validate a message; truncation, version mismatch, and NaN
/// payloads all fail with no partial message.
pub fn parse_message(bytes: &[u8]) -> Result<Message> {
    let msg: Message =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("decode failed: {e}")))?;
    msg.validate()?;
    Ok(msg)
}

/// The user-facing half of the protocol, as seen by the outsourcer.
pub trait Evaluator {
    fn handle(&mut self, request: EvaluationRequest) -> Result<EvaluationReply>;
    /// Best fitness seen up to each completed iteration (non-increasing).
    fn fitness_trace(&self) -> &[f64];
    fn ledger(&self) -> Option<&BudgetLedger>;
}

/// The user role: owns the dataset, the objective, the pbest history, the
/// mechanism stream, and the budget ledger.
pub struct UserEndpoint {
    dataset: Dataset,
    pbest: Vec<PositionVector>,
    ledger: Option<BudgetLedger>,
    mechanism: RngStream,
    sens: SensitivitySpec,
    private: bool,
    strict: bool,
    disclose_top3: bool,
    best_so_far: f64,
    trace: Vec<f64>,
}

impl UserEndpoint {
    pub fn new(dataset: Dataset, config: &RunConfig) -> Result<Self> {
        config.validate()?;
        dataset.validate()?;
        let ledger = if config.private {
            Some(allocate(
                config.epsilon,
                config.iterations,
                config.population_size,
            )?)
        } else {
            None
        };
        Ok(Self {
            dataset,
            pbest: Vec::new(),
            ledger,
            mechanism: RngStream::fork(config.seed, "mechanism")?,
            sens: SensitivitySpec {
                mode: config.sensitivity_mode,
                bounds: config.bounds,
            },
            private: config.private,
            strict: config.strict_disclosure,
            disclose_top3: config.behavior.kind == BehaviorKind::Gwo,
            best_so_far: f64::INFINITY,
            trace: Vec::new(),
        })
    }

    fn fitness_of(&self, w: &PositionVector) -> Result<f64> {
        Ok(mse_objective(&self.dataset, w)?.0)
    }

    /// Indices of the k best entries, ties to the lowest index.
    fn ranked_indices(fitness: &[f64]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..fitness.len()).collect();
        idx.sort_by(|&a, &b| {
            fitness[a]
                .partial_cmp(&fitness[b])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        idx
    }
}

impl Evaluator for UserEndpoint {
    /// Algorithm 1 line 5: update the personal bests for each individual,
    /// privately or greedily, and disclose per the configured mode.
    fn handle(&mut self, request: EvaluationRequest) -> Result<EvaluationReply> {
        Message::Request(request.clone()).validate()?;
        if self.pbest.is_empty() {
            // First contact: pbest starts as the initial positions.
            self.pbest = request.positions.clone();
        } else if self.pbest.len() != request.positions.len() {
            return Err(Error::State(format!(
                "request population {} != held pbest {}",
                request.positions.len(),
                self.pbest.len()
            )));
        }

        if self.private {
            let ledger = self.ledger.as_mut().expect("private run has a ledger");
            let eps_r = ledger.eps_per_iteration();
            self.pbest = dp_update_pbest(
                &self.dataset,
                &request.positions,
                &self.pbest,
                eps_r,
                self.sens,
                ledger,
                request.iteration,
                &mut self.mechanism,
            )?;
        } else {
            for (held, candidate) in self.pbest.iter_mut().zip(&request.positions) {
                let held_fit = mse_objective(&self.dataset, held)?.0;
                let cand_fit = mse_objective(&self.dataset, candidate)?.0;
                if cand_fit < held_fit {
                    *held = candidate.clone();
                }
            }
        }

        let fitness: Vec<f64> = self
            .pbest
            .iter()
            .map(|w| self.fitness_of(w))
            .collect::<Result<_>>()?;
        let ranked = Self::ranked_indices(&fitness);
        let best = ranked[0];
        let improved = fitness[best] < self.best_so_far;
        if improved {
            self.best_so_far = fitness[best];
        }
        self.trace.push(self.best_so_far);

        let disclosure = if self.strict {
            Disclosure::Ranked {
                best,
                improved,
                top3: self
                    .disclose_top3
                    .then(|| [ranked[0], ranked[1], ranked[2]]),
            }
        } else {
            Disclosure::Fitness { values: fitness }
        };
        let reply = EvaluationReply {
            version: WIRE_VERSION,
            iteration: request.iteration,
            pbest: self.pbest.clone(),
            disclosure,
        };
        Message::Reply(reply.clone()).validate()?;
        Ok(reply)
    }

    fn fitness_trace(&self) -> &[f64] {
        &self.trace
    }

    fn ledger(&self) -> Option<&BudgetLedger> {
        self.ledger.as_ref()
    }
}

/// Wraps an evaluator so every request and reply crosses the serialized wire
/// format. Behavior is identical to the in-process path.
pub struct WireEvaluator<E: Evaluator>(pub E);

impl<E: Evaluator> Evaluator for WireEvaluator<E> {
    fn handle(&mut self, request: EvaluationRequest) -> Result<EvaluationReply> {
        let bytes = serialize_message(&Message::Request(request))?;
        let request = match parse_message(&bytes)? {
            Message::Request(r) => r,
            _ => return Err(Error::Parse("expected a request".into())),
        };
        let reply = self.0.handle(request)?;
        let bytes = serialize_message(&Message::Reply(reply))?;
        match parse_message(&bytes)? {
            Message::Reply(r) => Ok(r),
            _ => Err(Error::Parse("expected a reply".into())),
        }
    }

    fn fitness_trace(&self) -> &[f64] {
        self.0.fitness_trace()
    }

    fn ledger(&self) -> Option<&BudgetLedger> {
        self.0.ledger()
    }
}

/// Outcome of one completed run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub gbest: PositionVector,
    pub gbest_fitness: FitnessValue,
    pub ledger: Option<BudgetLedger>,
    pub per_iteration_gbest_fitness: Vec<f64>,
}

/// Drive the outsourcer loop against an opaque user endpoint. The dataset
/// never appears on this side; only `dim` (public metadata) is needed to
/// initialize the swarm.
pub fn run_against<E: Evaluator>(
    config: &RunConfig,
    dim: usize,
    user: &mut E,
) -> Result<RunResult> {
    config.validate()?;
    if dim == 0 {
        return Err(Error::Config("dimension must be >= 1".into()));
    }
    let mut dynamics = RngStream::fork(config.seed, "dynamics")?;
    let m = config.population_size;
    let w = config.bounds.w_max();

    let positions: Vec<PositionVector> = (0..m)
        .map(|_| {
            PositionVector::new((0..dim).map(|_| dynamics.next_uniform_in(-w, w)).collect())
        })
        .collect();
    let mut state = SwarmState {
        pbest: positions.clone(),
        velocities: config
            .behavior
            .kind
            .uses_velocity()
            .then(|| vec![PositionVector::zeros(dim); m]),
        positions,
        pbest_fitness: Vec::new(),
        gbest: PositionVector::zeros(dim),
        gbest_fitness: FitnessValue(f64::INFINITY),
        disclosed_top3: None,
        iteration: 0,
    };
    let mut incumbent: Option<(PositionVector, FitnessValue)> = None;

    for t in 0..config.iterations {
        let request = EvaluationRequest {
            version: WIRE_VERSION,
            iteration: t,
            positions: state.positions.clone(),
        };
        let reply = user
            .handle(request)
            .map_err(|e| Error::State(format!("iteration {t}: {e}")))?;
        if reply.pbest.len() != m {
            return Err(Error::State(format!(
                "iteration {t}: reply carried {} pbest entries, expected {m}",
                reply.pbest.len()
            )));
        }
        state.pbest = reply.pbest;
        match reply.disclosure {
            Disclosure::Fitness { values } => {
                let fitness: Vec<FitnessValue> =
                    values.iter().copied().map(FitnessValue).collect();
                incumbent = Some(update_gbest(&state.pbest, &fitness, incumbent.take())?);
                state.pbest_fitness = values;
            }
            Disclosure::Ranked { best, improved, top3 } => {
                if improved || incumbent.is_none() {
                    incumbent = Some((state.pbest[best].clone(), FitnessValue(f64::NAN)));
                }
                state.disclosed_top3 = top3;
            }
        }
        let (gbest, gfit) = incumbent.clone().expect("set on first iteration");
        state.gbest = gbest;
        state.gbest_fitness = gfit;

        state.iteration = t;
        step(
            &mut state,
            &config.behavior,
            &mut dynamics,
            config.bounds,
            config.iterations,
        )
        .map_err(|e| Error::State(format!("iteration {t}: {e}")))?;
    }

    let trace = user.fitness_trace().to_vec();
    let gbest_fitness = FitnessValue(*trace.last().expect("at least one iteration"));
    Ok(RunResult {
        gbest: state.gbest,
        gbest_fitness,
        ledger: user.ledger().cloned(),
        per_iteration_gbest_fitness: trace,
    })
}

/// Algorithm 1 end to end, in-process: build the user endpoint around the
/// dataset and drive the outsourcer against it.
pub fn run(config: &RunConfig, dataset: &Dataset) -> Result<RunResult> {
    let dim = dataset.dim();
    let mut user = UserEndpoint::new(dataset.clone(), config)?;
    run_against(config, dim, &mut user)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::synth_linear;

    fn config(kind: BehaviorKind, private: bool) -> RunConfig {
        RunConfig {
            epsilon: 1.0,
            iterations: 10,
            population_size: 8,
            behavior: BehaviorSpec::new(kind),
            bounds: Bounds::default(),
            seed: 42,
            private,
            strict_disclosure: false,
            sensitivity_mode: SensitivityMode::PerPair,
        }
    }

    fn small_dataset() -> Dataset {
        let mut data = RngStream::fork(5, "data").unwrap();
        synth_linear(
            40,
            2,
            &PositionVector::new(vec![0.4, -0.3]),
            0.05,
            &mut data,
        )
        .unwrap()
    }

    #[test]
    fn greedy_keeps_pbest_when_candidates_are_worse() {
        let d = small_dataset();
        let cfg = config(BehaviorKind::Pso, false);
        let mut user = UserEndpoint::new(d.clone(), &cfg).unwrap();
        let good = PositionVector::new(vec![0.4, -0.3]);
        let bad = PositionVector::new(vec![-1.0, 1.0]);
        // Seed pbest with the good position.
        user.handle(EvaluationRequest {
            version: WIRE_VERSION,
            iteration: 0,
            positions: vec![good.clone(); 8],
        })
        .unwrap();
        let reply = user
            .handle(EvaluationRequest {
                version: WIRE_VERSION,
                iteration: 1,
                positions: vec![bad; 8],
            })
            .unwrap();
        assert_eq!(reply.pbest, vec![good; 8]);
    }

    #[test]
    fn reply_positions_come_from_sent_or_held() {
        let d = small_dataset();
        let cfg = config(BehaviorKind::Pso, true);
        let mut user = UserEndpoint::new(d, &cfg).unwrap();
        let mut dynamics = RngStream::fork(7, "dynamics").unwrap();
        let mut held: Vec<PositionVector> = (0..8)
            .map(|_| {
                PositionVector::new(vec![
                    dynamics.next_uniform_in(-1.0, 1.0),
                    dynamics.next_uniform_in(-1.0, 1.0),
                ])
            })
            .collect();
        for t in 0..5 {
            let sent: Vec<PositionVector> = (0..8)
                .map(|_| {
                    PositionVector::new(vec![
                        dynamics.next_uniform_in(-1.0, 1.0),
                        dynamics.next_uniform_in(-1.0, 1.0),
                    ])
                })
                .collect();
            let reply = user
                .handle(EvaluationRequest {
                    version: WIRE_VERSION,
                    iteration: t,
                    positions: sent.clone(),
                })
                .unwrap();
            for (i, p) in reply.pbest.iter().enumerate() {
                assert!(
                    *p == sent[i] || *p == held[i] || t == 0,
                    "reply entry {i} is neither the sent position nor the held pbest"
                );
            }
            held = reply.pbest;
        }
    }

    #[test]
    fn run_is_deterministic_and_monotone() {
        let d = small_dataset();
        for kind in BehaviorKind::ALL {
            let cfg = config(kind, true);
            let a = run(&cfg, &d).unwrap();
            let b = run(&cfg, &d).unwrap();
            assert_eq!(a.gbest, b.gbest, "{kind} not deterministic");
            assert_eq!(
                a.per_iteration_gbest_fitness,
                b.per_iteration_gbest_fitness
            );
            let trace = &a.per_iteration_gbest_fitness;
            assert_eq!(trace.len(), cfg.iterations);
            assert!(
                trace.windows(2).all(|w| w[1] <= w[0]),
                "{kind} trace not non-increasing: {trace:?}"
            );
        }
    }

    #[test]
    fn ledger_accounts_for_the_full_budget() {
        let d = small_dataset();
        let cfg = config(BehaviorKind::Pso, true);
        let result = run(&cfg, &d).unwrap();
        let ledger = result.ledger.unwrap();
        assert_eq!(
            ledger.log().len(),
            cfg.iterations * cfg.population_size
        );
        let ulp = cfg.epsilon * f64::EPSILON;
        let slack = (cfg.iterations * cfg.population_size) as f64 * ulp;
        assert!((ledger.consumed() - cfg.epsilon).abs() <= slack);
    }

    #[test]
    fn driving_past_the_budget_aborts() {
        let d = small_dataset();
        let mut cfg = config(BehaviorKind::Pso, true);
        cfg.iterations = 2;
        let mut user = UserEndpoint::new(d, &cfg).unwrap();
        let positions = vec![PositionVector::new(vec![0.1, 0.1]); 8];
        for t in 0..2 {
            user.handle(EvaluationRequest {
                version: WIRE_VERSION,
                iteration: t,
                positions: positions.clone(),
            })
            .unwrap();
        }
        let err = user
            .handle(EvaluationRequest {
                version: WIRE_VERSION,
                iteration: 2,
                positions,
            })
            .unwrap_err();
        assert!(err.to_string().contains("budget exhausted"), "{err}");
    }

    #[test]
    fn strict_mode_matches_faithful_gbest_for_pso() {
        let d = small_dataset();
        let mut faithful = config(BehaviorKind::Pso, true);
        let mut strict = faithful.clone();
        strict.strict_disclosure = true;
        faithful.strict_disclosure = false;
        let a = run(&faithful, &d).unwrap();
        let b = run(&strict, &d).unwrap();
        assert_eq!(a.gbest, b.gbest);
        assert_eq!(
            a.per_iteration_gbest_fitness,
            b.per_iteration_gbest_fitness
        );
    }

    #[test]
    fn strict_mode_supports_gwo_via_top3() {
        let d = small_dataset();
        let mut cfg = config(BehaviorKind::Gwo, true);
        cfg.strict_disclosure = true;
        let result = run(&cfg, &d).unwrap();
        assert!(result.gbest_fitness.0.is_finite());
    }

    #[test]
    fn wire_evaluator_is_transparent() {
        let d = small_dataset();
        let cfg = config(BehaviorKind::Pso, true);
        let direct = run(&cfg, &d).unwrap();
        let mut wired = WireEvaluator(UserEndpoint::new(d, &cfg).unwrap());
        let via_wire = run_against(&cfg, 2, &mut wired).unwrap();
        assert_eq!(direct.gbest, via_wire.gbest);
        assert_eq!(
            direct.per_iteration_gbest_fitness,
            via_wire.per_iteration_gbest_fitness
        );
    }

    #[test]
    fn outsourcer_runs_against_opaque_endpoint() {
        // A black-box evaluator that greedily selects; the outsourcer loop
        // needs no dataset access to complete.
        struct Opaque {
            target: Vec<f64>,
            pbest: Vec<PositionVector>,
            best: f64,
            trace: Vec<f64>,
        }
        impl Evaluator for Opaque {
            fn handle(&mut self, req: EvaluationRequest) -> Result<EvaluationReply> {
                if self.pbest.is_empty() {
                    self.pbest = req.positions.clone();
                }
                let fit = |p: &PositionVector| -> f64 {
                    p.coords
                        .iter()
                        .zip(&self.target)
                        .map(|(c, t)| (c - t) * (c - t))
                        .sum()
                };
                for (held, cand) in self.pbest.iter_mut().zip(&req.positions) {
                    if fit(cand) < fit(held) {
                        *held = cand.clone();
                    }
                }
                let values: Vec<f64> = self.pbest.iter().map(fit).collect();
                let min = values.iter().copied().fold(f64::INFINITY, f64::min);
                self.best = self.best.min(min);
                self.trace.push(self.best);
                Ok(EvaluationReply {
                    version: WIRE_VERSION,
                    iteration: req.iteration,
                    pbest: self.pbest.clone(),
                    disclosure: Disclosure::Fitness { values },
                })
            }
            fn fitness_trace(&self) -> &[f64] {
                &self.trace
            }
            fn ledger(&self) -> Option<&BudgetLedger> {
                None
            }
        }
        let mut cfg = config(BehaviorKind::Pso, false);
        cfg.iterations = 30;
        let mut opaque = Opaque {
            target: vec![0.3, -0.6],
            pbest: Vec::new(),
            best: f64::INFINITY,
            trace: Vec::new(),
        };
        let result = run_against(&cfg, 2, &mut opaque).unwrap();
        assert!(result.gbest_fitness.0 < 0.5);
    }

    #[test]
    fn message_round_trip_and_malformed_cases() {
        let req = Message::Request(EvaluationRequest {
            version: WIRE_VERSION,
            iteration: 3,
            positions: vec![PositionVector::new(vec![0.1, -0.9])],
        });
        let bytes = serialize_message(&req).unwrap();
        assert_eq!(parse_message(&bytes).unwrap(), req);

        // Truncation fails cleanly.
        assert!(parse_message(&bytes[..bytes.len() - 2]).is_err());

        // Empty population rejected.
        let empty = Message::Request(EvaluationRequest {
            version: WIRE_VERSION,
            iteration: 0,
            positions: vec![],
        });
        assert!(serialize_message(&empty).is_err());

        // NaN payload rejected before any bytes exist.
        let nan = Message::Request(EvaluationRequest {
            version: WIRE_VERSION,
            iteration: 0,
            positions: vec![PositionVector::new(vec![f64::NAN])],
        });
        assert!(serialize_message(&nan).is_err());

        // Version mismatch rejected at parse.
        let bad_version = bytes
            .iter()
            .collect::<Vec<_>>()
            .iter()
            .map(|b| **b)
            .collect::<Vec<u8>>();
        let s = String::from_utf8(bad_version).unwrap().replacen(
            "\"version\":1",
            "\"version\":99",
            1,
        );
        assert!(parse_message(s.as_bytes()).is_err());
    }
}
