//! Core search-space types: candidate positions and the symmetric box that
//! keeps the score sensitivity finite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate solution: the weight vector of the regression model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionVector {
    pub coords: Vec<f64>,
}

impl PositionVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl From<Vec<f64>> for PositionVector {
    fn from(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

/// Symmetric per-coordinate search box `[-w_max, w_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    w_max: f64,
}

impl Bounds {
    pub fn new(w_max: f64) -> Result<Self> {
        if !(w_max.is_finite() && w_max > 0.0) {
            return Err(Error::Domain(format!(
                "bounds half-width must be positive and finite, got {w_max}"
            )));
        }
        Ok(Self { w_max })
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    pub fn contains(&self, p: &PositionVector) -> bool {
        p.coords.iter().all(|c| c.abs() <= self.w_max)
    }
}

impl Default for Bounds {
    /// Matches the normalized data range `[-1, 1]`.
    fn default() -> Self {
        Self { w_max: 1.0 }
    }
}

/// Project every coordinate into the box. Errors on non-finite coordinates,
/// naming the first offending index.
pub fn clamp(p: &PositionVector, b: Bounds) -> Result<PositionVector> {
    if let Some(i) = p.coords.iter().position(|c| !c.is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite coordinate {} at index {i}",
            p.coords[i]
        )));
    }
    Ok(PositionVector::new(
        p.coords
            .iter()
            .map(|c| c.clamp(-b.w_max, b.w_max))
            .collect(),
    ))
}
