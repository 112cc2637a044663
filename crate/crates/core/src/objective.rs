//! The user-side regression task: mean-squared-error objective, the score
//! handed to the exponential mechanism, its sensitivity bound, and RMSE.
//!
//! The score of a candidate weight vector `w` on dataset `D` is the negated
//! mean squared error, `q(D, w) = -(1/n) Σ (wᵀx_i - y_i)²`. With every
//! attribute bounded by `a`, the score difference between datasets that
//! differ in one record is at most `(a·Σ_j |w_j| + a)²`; that bound is what
//! scales the mechanism's exponent.

use serde::{Deserialize, Serialize};

use crate::domain::{Bounds, PositionVector};
use crate::error::{Error, Result};

/// Normalized records with a shared attribute bound `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub xs: Vec<Vec<f64>>,
    pub ys: Vec<f64>,
    pub a: f64,
}

impl Dataset {
    pub fn new(xs: Vec<Vec<f64>>, ys: Vec<f64>, a: f64) -> Result<Self> {
        let d = Self { xs, ys, a };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::Domain(format!(
                "attribute bound must be positive, got {}",
                self.a
            )));
        }
        if self.xs.is_empty() || self.xs.len() != self.ys.len() {
            return Err(Error::Domain(format!(
                "dataset needs n >= 1 rows with matching targets (got {} rows, {} targets)",
                self.xs.len(),
                self.ys.len()
            )));
        }
        let d = self.xs[0].len();
        if d == 0 {
            return Err(Error::Domain("dataset needs d >= 1 features".into()));
        }
        for (i, (row, y)) in self.xs.iter().zip(&self.ys).enumerate() {
            if row.len() != d {
                return Err(Error::Domain(format!(
                    "ragged dataset: row {i} has {} features, expected {d}",
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite() || x.abs() > self.a) || !y.is_finite() || y.abs() > self.a {
                return Err(Error::Domain(format!(
                    "row {i} violates the attribute bound |v| <= {}",
                    self.a
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn dim(&self) -> usize {
        self.xs[0].len()
    }

    /// Restrict to the given row indices (used for cross-validation splits).
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Dataset::new(
            indices.iter().map(|&i| self.xs[i].clone()).collect(),
            indices.iter().map(|&i| self.ys[i]).collect(),
            self.a,
        )
    }
}

/// Non-negative mean squared error of a candidate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct FitnessValue(pub f64);

/// Upper bound on the score change across neighboring datasets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityBound(pub f64);

/// How the sensitivity bound is computed for a selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SensitivityMode {
    /// Tight bound over the two candidates actually offered to the mechanism.
    PerPair,
    /// Worst case over the whole search box; never inspects candidates.
    Global,
}

impl std::str::FromStr for SensitivityMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-pair" => Ok(Self::PerPair),
            "global" => Ok(Self::Global),
            other => Err(Error::Config(format!(
                "unknown sensitivity mode {other:?} (expected per-pair or global)"
            ))),
        }
    }
}

fn predict(w: &PositionVector, x: &[f64]) -> f64 {
    w.coords.iter().zip(x).map(|(wj, xj)| wj * xj).sum()
}

/// Mean of squared residuals of `w` on `d`.
pub fn mse_objective(d: &Dataset, w: &PositionVector) -> Result<FitnessValue> {
    if w.dim() != d.dim() {
        return Err(Error::Domain(format!(
            "weight dimension {} does not match dataset dimension {}",
            w.dim(),
            d.dim()
        )));
    }
    let sum: f64 = d
        .xs
        .iter()
        .zip(&d.ys)
        .map(|(x, y)| {
            let r = predict(w, x) - y;
            r * r
        })
        .sum();
    Ok(FitnessValue(sum / d.n() as f64))
}

/// Mechanism score: negated MSE, so higher is better.
pub fn score(d: &Dataset, w: &PositionVector) -> Result<f64> {
    Ok(-mse_objective(d, w)?.0)
}

/// Per-pair sensitivity: `max_w (a·Σ_j |w_j| + a)²` over the supplied
/// candidates.
pub fn sensitivity_per_pair(candidates: &[PositionVector], a: f64) -> Result<SensitivityBound> {
    if candidates.is_empty() {
        return Err(Error::Domain(
            "per-pair sensitivity needs at least one candidate".into(),
        ));
    }
    let max = candidates
        .iter()
        .map(|w| {
            let l1: f64 = w.coords.iter().map(|c| c.abs()).sum();
            let base = a * l1 + a;
            base * base
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(SensitivityBound(max))
}

/// Global sensitivity over the whole box: `(d·a·w_max + a)²`.
pub fn sensitivity_global(d_dim: usize, a: f64, b: Bounds) -> SensitivityBound {
    let base = d_dim as f64 * a * b.w_max() + a;
    SensitivityBound(base * base)
}

/// Dispatch on the configured mode.
pub fn sensitivity_bound(
    candidates: &[PositionVector],
    a: f64,
    mode: SensitivityMode,
    b: Bounds,
    d_dim: usize,
) -> Result<SensitivityBound> {
    match mode {
        SensitivityMode::PerPair => sensitivity_per_pair(candidates, a),
        SensitivityMode::Global => Ok(sensitivity_global(d_dim, a, b)),
    }
}

/// Root mean square error of predictions against actuals.
pub fn rmse(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    if predicted.is_empty() || predicted.len() != actual.len() {
        return Err(Error::Domain(format!(
            "rmse needs equal non-empty inputs (got {} and {})",
            predicted.len(),
            actual.len()
        )));
    }
    let sum: f64 = predicted
        .iter()
        .zip(actual)
        .map(|(p, y)| (p - y) * (p - y))
        .sum();
    Ok((sum / predicted.len() as f64).sqrt())
}

/// RMSE of `w` on a held-out dataset.
pub fn rmse_of(d: &Dataset, w: &PositionVector) -> Result<f64> {
    let predicted: Vec<f64> = d.xs.iter().map(|x| predict(w, x)).collect();
    rmse(&predicted, &d.ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dataset(xs: Vec<Vec<f64>>, ys: Vec<f64>) -> Dataset {
        Dataset::new(xs, ys, 1.0).unwrap()
    }

    #[test]
    fn mse_perfect_fit_is_zero() {
        let d = dataset(vec![vec![1.0]; 3], vec![1.0; 3]);
        let w = PositionVector::new(vec![1.0]);
        assert_eq!(mse_objective(&d, &w).unwrap().0, 0.0);
    }

    #[test]
    fn mse_hand_evaluated_cases() {
        let d = dataset(vec![vec![1.0]], vec![0.0]);
        let w = PositionVector::new(vec![1.0]);
        assert_eq!(mse_objective(&d, &w).unwrap().0, 1.0);

        let d = dataset(vec![vec![0.5]], vec![1.0]);
        assert_eq!(mse_objective(&d, &w).unwrap().0, 0.25);
    }

    #[test]
    fn mse_rejects_dimension_mismatch() {
        let d = dataset(vec![vec![1.0, 0.0]], vec![0.0]);
        let w = PositionVector::new(vec![1.0]);
        assert!(mse_objective(&d, &w).is_err());
    }

    #[test]
    fn score_negates_mse() {
        let d = dataset(vec![vec![1.0]], vec![0.0]);
        let w = PositionVector::new(vec![1.0]);
        assert_eq!(score(&d, &w).unwrap(), -1.0);

        let perfect = dataset(vec![vec![1.0]; 3], vec![1.0; 3]);
        assert_eq!(score(&perfect, &w).unwrap(), 0.0);
    }

    #[test]
    fn sensitivity_per_pair_examples() {
        let c = [PositionVector::new(vec![0.5, -0.5])];
        assert_eq!(sensitivity_per_pair(&c, 1.0).unwrap().0, 4.0);

        let zero = [PositionVector::zeros(5)];
        assert_eq!(sensitivity_per_pair(&zero, 1.0).unwrap().0, 1.0);
    }

    #[test]
    fn sensitivity_global_example() {
        let b = Bounds::new(1.0).unwrap();
        assert_eq!(sensitivity_global(2, 1.0, b).0, 9.0);
    }

    #[test]
    fn sensitivity_per_pair_rejects_empty() {
        assert!(sensitivity_per_pair(&[], 1.0).is_err());
    }

    #[test]
    fn rmse_examples() {
        assert_eq!(rmse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(rmse(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(rmse(&[3.0], &[0.0]).unwrap(), 3.0);
        assert!(rmse(&[], &[]).is_err());
        assert!(rmse(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn dataset_validation_rejects_out_of_bound_values() {
        assert!(Dataset::new(vec![vec![1.5]], vec![0.0], 1.0).is_err());
        assert!(Dataset::new(vec![vec![0.5]], vec![-1.2], 1.0).is_err());
        assert!(Dataset::new(vec![], vec![], 1.0).is_err());
    }

    proptest! {
        #[test]
        fn score_is_definitionally_negated_mse(
            rows in proptest::collection::vec(
                (proptest::collection::vec(-1.0f64..1.0, 3), -1.0f64..1.0), 1..10),
            w in proptest::collection::vec(-1.0f64..1.0, 3),
        ) {
            let (xs, ys): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
            let d = Dataset::new(xs, ys, 1.0).unwrap();
            let w = PositionVector::new(w);
            prop_assert_eq!(score(&d, &w).unwrap(), -mse_objective(&d, &w).unwrap().0);
        }

        #[test]
        fn mse_invariant_to_row_permutation(
            rows in proptest::collection::vec(
                (proptest::collection::vec(-1.0f64..1.0, 2), -1.0f64..1.0), 2..8),
            w in proptest::collection::vec(-1.0f64..1.0, 2),
        ) {
            let (xs, ys): (Vec<_>, Vec<_>) = rows.iter().cloned().unzip();
            let d = Dataset::new(xs, ys, 1.0).unwrap();
            let mut rev = rows;
            rev.reverse();
            let (xs, ys): (Vec<_>, Vec<_>) = rev.into_iter().unzip();
            let rd = Dataset::new(xs, ys, 1.0).unwrap();
            let w = PositionVector::new(w);
            let a = mse_objective(&d, &w).unwrap().0;
            let b = mse_objective(&rd, &w).unwrap().0;
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }

        #[test]
        fn rmse_scales_with_residuals(
            residuals in proptest::collection::vec(-10.0f64..10.0, 1..10),
            c in -5.0f64..5.0,
        ) {
            let zeros = vec![0.0; residuals.len()];
            let base = rmse(&residuals, &zeros).unwrap();
            let scaled: Vec<f64> = residuals.iter().map(|r| c * r).collect();
            let got = rmse(&scaled, &zeros).unwrap();
            prop_assert!((got - c.abs() * base).abs() <= 1e-9 * (1.0 + base));
        }
    }

    // Small-instance oracle: enumerate bounded neighbors and confirm the
    // per-pair bound dominates every observed score difference.
    #[test]
    fn sensitivity_bound_dominates_enumerated_neighbors() {
        let grid = [-1.0, -0.5, 0.0, 0.5, 1.0];
        let mut stream = crate::rng::RngStream::fork(11, "data").unwrap();
        for _ in 0..25 {
            let n = 2 + stream.next_index(5); // n in 2..=6
            let dim = 1 + stream.next_index(3); // d in 1..=3
            let xs: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| stream.next_uniform_in(-1.0, 1.0)).collect())
                .collect();
            let ys: Vec<f64> = (0..n).map(|_| stream.next_uniform_in(-1.0, 1.0)).collect();
            let d = Dataset::new(xs, ys, 1.0).unwrap();
            let w = PositionVector::new(
                (0..dim).map(|_| stream.next_uniform_in(-1.0, 1.0)).collect(),
            );
            let bound = sensitivity_per_pair(std::slice::from_ref(&w), 1.0)
                .unwrap()
                .0;
            let q = score(&d, &w).unwrap();
            for row in 0..n {
                for &gx in &grid {
                    for &gy in &grid {
                        let mut neighbor = d.clone();
                        neighbor.xs[row] = vec![gx; dim];
                        neighbor.ys[row] = gy;
                        let qn = score(&neighbor, &w).unwrap();
                        assert!(
                            (q - qn).abs() <= bound + 1e-12,
                            "score diff {} exceeded bound {bound}",
                            (q - qn).abs()
                        );
                    }
                }
            }
        }
    }
}
