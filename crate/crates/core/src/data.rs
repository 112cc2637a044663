//! Dataset ingestion, `[-1, 1]` normalization, cross-validation fold plans,
//! and synthetic regression data for desk-scale experiments.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::PositionVector;
use crate::error::{Error, Result};
use crate::objective::Dataset;
use crate::rng::RngStream;

/// A validated rectangular table of reals, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub target_column: usize,
}

/// Which column holds the regression target.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub enum TargetColumn {
    /// The rightmost column (matches the UCI layouts).
    #[default]
    Last,
    Index(usize),
    Name(String),
}

impl RawTable {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.header.len() - 1
    }
}

/// Load a comma-separated file with one header row; every cell must parse as
/// a finite real.
pub fn load_csv(path: &Path, target: &TargetColumn) -> Result<RawTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::Load(format!("{}: {e}", path.display())))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Load(format!("{}: bad header: {e}", path.display())))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.len() < 2 {
        return Err(Error::Load(format!(
            "{}: need at least one feature and one target column",
            path.display()
        )));
    }
    let target_column = match target {
        TargetColumn::Last => header.len() - 1,
        TargetColumn::Index(i) => {
            if *i >= header.len() {
                return Err(Error::Load(format!(
                    "target column index {i} out of range ({} columns)",
                    header.len()
                )));
            }
            *i
        }
        TargetColumn::Name(name) => header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Load(format!("target column {name:?} not found")))?,
    };

    let mut rows = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| Error::Load(format!("row {}: {e}", row_idx + 1)))?;
        if record.len() != header.len() {
            return Err(Error::Load(format!(
                "row {}: has {} cells, expected {}",
                row_idx + 1,
                record.len(),
                header.len()
            )));
        }
        let mut row = Vec::with_capacity(record.len());
        for (col, cell) in record.iter().enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| {
                Error::Load(format!(
                    "row {}, column {:?}: cell {cell:?} is not a number",
                    row_idx + 1,
                    header[col]
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Load(format!(
                    "row {}, column {:?}: non-finite value",
                    row_idx + 1,
                    header[col]
                )));
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Load(format!(
            "{}: no data rows (n >= 1 required)",
            path.display()
        )));
    }
    Ok(RawTable {
        header,
        rows,
        target_column,
    })
}

/// Per-column min/max, kept for inverse-mapping predictions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    pub min: f64,
    pub max: f64,
}

impl ColumnStats {
    /// `v ↦ 2·(v − min)/(max − min) − 1`; constant columns map to 0.
    pub fn normalize(&self, v: f64) -> f64 {
        if self.max == self.min {
            0.0
        } else {
            2.0 * (v - self.min) / (self.max - self.min) - 1.0
        }
    }

    pub fn denormalize(&self, v: f64) -> f64 {
        (v + 1.0) / 2.0 * (self.max - self.min) + self.min
    }
}

/// Map every attribute (features and target) into `[-1, 1]`. Statistics are
/// computed on the full table, before any splitting. Returns the dataset
/// (with `a = 1`) and per-column stats in original column order.
pub fn normalize(t: &RawTable) -> Result<(Dataset, Vec<ColumnStats>)> {
    let cols = t.header.len();
    let stats: Vec<ColumnStats> = (0..cols)
        .map(|c| {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for row in &t.rows {
                min = min.min(row[c]);
                max = max.max(row[c]);
            }
            ColumnStats { min, max }
        })
        .collect();
    let mut xs = Vec::with_capacity(t.rows.len());
    let mut ys = Vec::with_capacity(t.rows.len());
    for row in &t.rows {
        let mut features = Vec::with_capacity(cols - 1);
        for c in 0..cols {
            let v = stats[c].normalize(row[c]);
            if c == t.target_column {
                ys.push(v);
            } else {
                features.push(v);
            }
        }
        xs.push(features);
    }
    Ok((Dataset::new(xs, ys, 1.0)?, stats))
}

/// Repeated k-fold assignments: per repeat, a shuffled partition of the row
/// indices into k folds whose sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub repeats: usize,
    pub assignments: Vec<Vec<Vec<usize>>>,
}

impl FoldPlan {
    /// (train, test) index split for one (repeat, fold) cell.
    pub fn split(&self, repeat: usize, fold: usize) -> (Vec<usize>, Vec<usize>) {
        let folds = &self.assignments[repeat];
        let test = folds[fold].clone();
        let train = folds
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != fold)
            .flat_map(|(_, f)| f.iter().copied())
            .collect();
        (train, test)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Fisher-Yates shuffle driven by the stream's uniform draws.
fn shuffle(indices: &mut [usize], rng: &mut RngStream) {
    for i in (1..indices.len()).rev() {
        let j = rng.next_index(i + 1);
        indices.swap(i, j);
    }
}

/// Build a deterministic repeated k-fold plan from the data stream.
pub fn kfold(n: usize, k: usize, repeats: usize, rng: &mut RngStream) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::Config(format!("k must be >= 2, got {k}")));
    }
    if n < k {
        return Err(Error::Config(format!("n = {n} must be >= k = {k}")));
    }
    if repeats == 0 {
        return Err(Error::Config("repeats must be >= 1".into()));
    }
    let mut assignments = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let mut indices: Vec<usize> = (0..n).collect();
        shuffle(&mut indices, rng);
        // First n % k folds take one extra row.
        let base = n / k;
        let extra = n % k;
        let mut folds = Vec::with_capacity(k);
        let mut start = 0;
        for f in 0..k {
            let size = base + usize::from(f < extra);
            folds.push(indices[start..start + size].to_vec());
            start += size;
        }
        assignments.push(folds);
    }
    Ok(FoldPlan {
        k,
        repeats,
        assignments,
    })
}

/// Synthetic linear-regression data: features uniform in `[-1, 1]^d`,
/// targets `w_trueᵀx + N(0, noise_sd)` clipped to `[-1, 1]`, `a = 1`.
pub fn synth_linear(
    n: usize,
    d: usize,
    w_true: &PositionVector,
    noise_sd: f64,
    rng: &mut RngStream,
) -> Result<Dataset> {
    if n == 0 || d == 0 {
        return Err(Error::Config(format!(
            "synthetic data needs n >= 1 and d >= 1 (got n={n}, d={d})"
        )));
    }
    if w_true.dim() != d {
        return Err(Error::Config(format!(
            "w_true dimension {} != d = {d}",
            w_true.dim()
        )));
    }
    if !(noise_sd.is_finite() && noise_sd >= 0.0) {
        return Err(Error::Config(format!("noise_sd must be >= 0, got {noise_sd}")));
    }
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<f64> = (0..d).map(|_| rng.next_uniform_in(-1.0, 1.0)).collect();
        let mut y: f64 = w_true.coords.iter().zip(&x).map(|(w, xi)| w * xi).sum();
        if noise_sd > 0.0 {
            y += noise_sd * rng.next_gaussian();
        }
        ys.push(y.clamp(-1.0, 1.0));
        xs.push(x);
    }
    Dataset::new(xs, ys, 1.0)
}
