//! Outsourcer-side population update rules: PSO and its cognition-only /
//! social-only ablations, GWO, WOA, and SOA, all behind one step contract.
//!
//! Draw order is part of each operation's contract (the dynamics stream is
//! shared with the non-private twin, so every draw must be accounted for):
//!
//! * PSO: per individual, scalar `r1` then `r2` (2 draws).
//! * CPSO: per individual, scalar `r1` (1 draw). SPSO: scalar `r2` (1 draw).
//! * GWO: per individual, per leader (alpha, beta, delta), per dimension,
//!   `u1` then `u2` (6·d draws).
//! * WOA: per individual, branch draw `p`; then either `u1, u2` for the
//!   encircle/search branches (plus one index draw for the random-agent
//!   search) or a single spiral parameter `l` in `[-1, 1]`.
//! * SOA: per individual, `rd` in `[0, 1]` then spiral angle `k` in
//!   `[0, 2π]` (2 draws).
//!
//! Adopted reference equations, where the original publications admit
//! variants:
//!
//! * GWO (Mirjalili et al. 2014): `a(t) = a0·(1 − t/r)`; per leader `L`,
//!   `A = 2a·u1 − a`, `C = 2·u2`, `X_L = L − A·|C·L − P|`; the new position
//!   is the mean of the three `X_L`.
//! * WOA (Mirjalili & Lewis 2016): `a(t) = 2·(1 − t/r)`; `p < 0.5` encircles
//!   the best position when `|A| < 1` and a random agent otherwise;
//!   `p ≥ 0.5` spirals: `P = |Gbest − P|·exp(b·l)·cos(2πl) + Gbest`.
//! * SOA (Dhiman & Kumar 2019): `A(t) = fc − t·fc/r`; `Cs = A·P`,
//!   `Ms = B·(Gbest − P)` with `B = 2A²·rd`, `Ds = |Cs + Ms|`; attack spiral
//!   `x = e^k·cos k`, `y = e^k·sin k`, `z = e^k·k` (u = v = 1), and the new
//!   position is `Ds·x·y·z + Gbest`.

use serde::{Deserialize, Serialize};

use crate::domain::{clamp, Bounds, PositionVector};
use crate::error::{Error, Result};
use crate::objective::FitnessValue;
use crate::rng::RngStream;

/// The six supported behavior patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BehaviorKind {
    Pso,
    Cpso,
    Spso,
    Gwo,
    Woa,
    Soa,
}

impl BehaviorKind {
    pub const ALL: [BehaviorKind; 6] = [
        BehaviorKind::Pso,
        BehaviorKind::Cpso,
        BehaviorKind::Spso,
        BehaviorKind::Gwo,
        BehaviorKind::Woa,
        BehaviorKind::Soa,
    ];

    /// PSO-family behaviors carry velocities.
    pub fn uses_velocity(&self) -> bool {
        matches!(self, BehaviorKind::Pso | BehaviorKind::Cpso | BehaviorKind::Spso)
    }

    pub fn name(&self) -> &'static str {
        match self {
            BehaviorKind::Pso => "PSO",
            BehaviorKind::Cpso => "CPSO",
            BehaviorKind::Spso => "SPSO",
            BehaviorKind::Gwo => "GWO",
            BehaviorKind::Woa => "WOA",
            BehaviorKind::Soa => "SOA",
        }
    }
}

impl std::fmt::Display for BehaviorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BehaviorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PSO" => Ok(BehaviorKind::Pso),
            "CPSO" => Ok(BehaviorKind::Cpso),
            "SPSO" => Ok(BehaviorKind::Spso),
            "GWO" => Ok(BehaviorKind::Gwo),
            "WOA" => Ok(BehaviorKind::Woa),
            "SOA" => Ok(BehaviorKind::Soa),
            other => Err(Error::Config(format!("unknown behavior kind {other:?}"))),
        }
    }
}

/// Per-algorithm update-rule parameters. Defaults follow the original works:
/// PSO `c1 = c2 = 2`, GWO `a0 = 2`, WOA `b = 1`, SOA `fc = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BehaviorSpec {
    pub kind: BehaviorKind,
    pub pso_c1: f64,
    pub pso_c2: f64,
    pub gwo_a0: f64,
    pub woa_b: f64,
    pub soa_fc: f64,
}

impl BehaviorSpec {
    pub fn new(kind: BehaviorKind) -> Self {
        Self {
            kind,
            pso_c1: 2.0,
            pso_c2: 2.0,
            gwo_a0: 2.0,
            woa_b: 1.0,
            soa_fc: 2.0,
        }
    }
}

/// Full outsourcer-side swarm state.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub positions: Vec<PositionVector>,
    /// Present for the PSO family only.
    pub velocities: Option<Vec<PositionVector>>,
    pub pbest: Vec<PositionVector>,
    /// Disclosed fitness of each pbest entry (empty in strict disclosure).
    pub pbest_fitness: Vec<f64>,
    pub gbest: PositionVector,
    pub gbest_fitness: FitnessValue,
    /// Leader indices disclosed by a strict-mode user; overrides the
    /// fitness-ranked leaders for GWO.
    pub disclosed_top3: Option<[usize; 3]>,
    pub iteration: usize,
}

impl SwarmState {
    pub fn population_size(&self) -> usize {
        self.positions.len()
    }

    fn check_lengths(&self) -> Result<()> {
        let m = self.positions.len();
        if self.pbest.len() != m {
            return Err(Error::State(format!(
                "pbest length {} != population {m}",
                self.pbest.len()
            )));
        }
        if let Some(v) = &self.velocities {
            if v.len() != m {
                return Err(Error::State(format!(
                    "velocities length {} != population {m}",
                    v.len()
                )));
            }
        }
        Ok(())
    }
}

/// Keep the incumbent unless some pbest entry is strictly better; ties break
/// to the lowest index.
pub fn update_gbest(
    pbest: &[PositionVector],
    fitness: &[FitnessValue],
    current: Option<(PositionVector, FitnessValue)>,
) -> Result<(PositionVector, FitnessValue)> {
    if pbest.is_empty() || pbest.len() != fitness.len() {
        return Err(Error::Domain(format!(
            "pbest ({}) and fitness ({}) must be equal non-empty lengths",
            pbest.len(),
            fitness.len()
        )));
    }
    let mut best_i = 0;
    for i in 1..fitness.len() {
        if fitness[i].0 < fitness[best_i].0 {
            best_i = i;
        }
    }
    match current {
        Some((pos, fit)) if fitness[best_i].0 >= fit.0 => Ok((pos, fit)),
        _ => Ok((pbest[best_i].clone(), fitness[best_i])),
    }
}

/// Dispatch one behavior step. Does not advance `iteration`; the protocol
/// loop owns the counter.
pub fn step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
    r_total: usize,
) -> Result<()> {
    match spec.kind {
        BehaviorKind::Pso => pso_step(s, spec, rng, b),
        BehaviorKind::Cpso => cpso_step(s, spec, rng, b),
        BehaviorKind::Spso => spso_step(s, spec, rng, b),
        BehaviorKind::Gwo => gwo_step(s, spec, rng, b, r_total),
        BehaviorKind::Woa => woa_step(s, spec, rng, b, r_total),
        BehaviorKind::Soa => soa_step(s, spec, rng, b, r_total),
    }
}

enum PsoVariant {
    Full,
    CognitionOnly,
    SocialOnly,
}

fn pso_family_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
    variant: PsoVariant,
) -> Result<()> {
    s.check_lengths()?;
    let velocities = s
        .velocities
        .as_mut()
        .ok_or_else(|| Error::State("PSO-family step requires velocities".into()))?;
    for i in 0..s.positions.len() {
        let (r1, r2) = match variant {
            PsoVariant::Full => (rng.next_uniform(), rng.next_uniform()),
            PsoVariant::CognitionOnly => (rng.next_uniform(), 0.0),
            PsoVariant::SocialOnly => (0.0, rng.next_uniform()),
        };
        let p = &mut s.positions[i];
        let v = &mut velocities[i];
        for k in 0..p.coords.len() {
            let cognition = match variant {
                PsoVariant::SocialOnly => 0.0,
                _ => spec.pso_c1 * r1 * (s.pbest[i].coords[k] - p.coords[k]),
            };
            let social = match variant {
                PsoVariant::CognitionOnly => 0.0,
                _ => spec.pso_c2 * r2 * (s.gbest.coords[k] - p.coords[k]),
            };
            v.coords[k] += cognition + social;
            p.coords[k] += v.coords[k];
        }
        *p = clamp(p, b)?;
    }
    Ok(())
}

/// Full PSO velocity/position update (2 scalar draws per individual).
pub fn pso_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
) -> Result<()> {
    pso_family_step(s, spec, rng, b, PsoVariant::Full)
}

/// Cognition-only ablation: the Gbest term is absent (1 draw).
pub fn cpso_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
) -> Result<()> {
    pso_family_step(s, spec, rng, b, PsoVariant::CognitionOnly)
}

/// Social-only ablation: the Pbest term is absent (1 draw).
pub fn spso_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
) -> Result<()> {
    pso_family_step(s, spec, rng, b, PsoVariant::SocialOnly)
}

/// Alpha, beta, delta: the three best pbest entries by disclosed fitness,
/// ties to the lowest index. Strict-mode runs disclose the indices directly.
fn gwo_leaders(s: &SwarmState) -> Result<[usize; 3]> {
    if s.positions.len() < 3 {
        return Err(Error::Config(format!(
            "GWO needs a population of at least 3, got {}",
            s.positions.len()
        )));
    }
    if let Some(top3) = s.disclosed_top3 {
        return Ok(top3);
    }
    if s.pbest_fitness.len() != s.pbest.len() {
        return Err(Error::State(
            "GWO leader ranking requires disclosed pbest fitness".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..s.pbest.len()).collect();
    idx.sort_by(|&a, &b| {
        s.pbest_fitness[a]
            .partial_cmp(&s.pbest_fitness[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    Ok([idx[0], idx[1], idx[2]])
}

/// GWO step: each individual moves to the mean of three leader-guided
/// points, with `a` decaying linearly from `a0` to 0.
pub fn gwo_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
    r_total: usize,
) -> Result<()> {
    s.check_lengths()?;
    let leaders = gwo_leaders(s)?;
    let a = gwo_schedule(spec.gwo_a0, s.iteration, r_total);
    let leader_positions: [PositionVector; 3] = [
        s.pbest[leaders[0]].clone(),
        s.pbest[leaders[1]].clone(),
        s.pbest[leaders[2]].clone(),
    ];
    let dim = s.gbest.dim();
    for i in 0..s.positions.len() {
        let mut guided = [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]];
        for (l, leader) in leader_positions.iter().enumerate() {
            for k in 0..dim {
                let u1 = rng.next_uniform();
                let u2 = rng.next_uniform();
                let big_a = 2.0 * a * u1 - a;
                let big_c = 2.0 * u2;
                let lk = leader.coords[k];
                guided[l][k] = lk - big_a * (big_c * lk - s.positions[i].coords[k]).abs();
            }
        }
        // Mean written so three identical contributions collapse bit-exactly.
        let mean: Vec<f64> = (0..dim)
            .map(|k| {
                let x0 = guided[0][k];
                x0 + ((guided[1][k] - x0) + (guided[2][k] - x0)) / 3.0
            })
            .collect();
        s.positions[i] = clamp(&PositionVector::new(mean), b)?;
    }
    Ok(())
}

/// Linear GWO schedule `a0 → 0`.
pub fn gwo_schedule(a0: f64, t: usize, r_total: usize) -> f64 {
    a0 * (1.0 - t as f64 / r_total as f64)
}

/// Linear WOA schedule `2 → 0`.
pub fn woa_schedule(t: usize, r_total: usize) -> f64 {
    2.0 * (1.0 - t as f64 / r_total as f64)
}

/// WOA step: encircle the best position, search toward a random agent, or
/// spiral toward the best, chosen by the per-individual branch draw.
pub fn woa_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
    r_total: usize,
) -> Result<()> {
    s.check_lengths()?;
    let a = woa_schedule(s.iteration, r_total);
    let m = s.positions.len();
    let snapshot = s.positions.clone();
    for i in 0..m {
        let p_branch = rng.next_uniform();
        if p_branch < 0.5 {
            let u1 = rng.next_uniform();
            let u2 = rng.next_uniform();
            let big_a = 2.0 * a * u1 - a;
            let big_c = 2.0 * u2;
            let target = if big_a.abs() < 1.0 {
                s.gbest.clone()
            } else {
                snapshot[rng.next_index(m)].clone()
            };
            for k in 0..s.positions[i].coords.len() {
                let dist = (big_c * target.coords[k] - s.positions[i].coords[k]).abs();
                s.positions[i].coords[k] = target.coords[k] - big_a * dist;
            }
        } else {
            let l = rng.next_uniform_in(-1.0, 1.0);
            let shape = (spec.woa_b * l).exp() * (std::f64::consts::TAU * l).cos();
            for k in 0..s.positions[i].coords.len() {
                let dist = (s.gbest.coords[k] - s.positions[i].coords[k]).abs();
                s.positions[i].coords[k] = dist * shape + s.gbest.coords[k];
            }
        }
        s.positions[i] = clamp(&s.positions[i], b)?;
    }
    Ok(())
}

/// Linear SOA schedule `fc → 0`.
pub fn soa_schedule(fc: f64, t: usize, r_total: usize) -> f64 {
    fc - t as f64 * (fc / r_total as f64)
}

/// SOA step: migration (collision avoidance plus attraction to the best)
/// followed by the attack spiral around the best position.
pub fn soa_step(
    s: &mut SwarmState,
    spec: &BehaviorSpec,
    rng: &mut RngStream,
    b: Bounds,
    r_total: usize,
) -> Result<()> {
    s.check_lengths()?;
    let big_a = soa_schedule(spec.soa_fc, s.iteration, r_total);
    for i in 0..s.positions.len() {
        let rd = rng.next_uniform();
        let k = rng.next_uniform_in(0.0, std::f64::consts::TAU);
        let big_b = 2.0 * big_a * big_a * rd;
        let r_spiral = k.exp(); // u = v = 1
        let x = r_spiral * k.cos();
        let y = r_spiral * k.sin();
        let z = r_spiral * k;
        for dim in 0..s.positions[i].coords.len() {
            let cs = big_a * s.positions[i].coords[dim];
            let ms = big_b * (s.gbest.coords[dim] - s.positions[i].coords[dim]);
            let ds = (cs + ms).abs();
            s.positions[i].coords[dim] = ds * x * y * z + s.gbest.coords[dim];
        }
        s.positions[i] = clamp(&s.positions[i], b)?;
    }
    Ok(())
}
