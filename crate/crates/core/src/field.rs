//! Evaluation grids, solution fields and field discrepancies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GridError {
    #[error("grid axis {axis} is empty")]
    Empty { axis: &'static str },
    #[error("grid axis {axis} must be strictly increasing (entry {index})")]
    NotIncreasing { axis: &'static str, index: usize },
    #[error("grid axis {axis} entry {index} = {value} is out of range")]
    OutOfRange { axis: &'static str, index: usize, value: f64 },
    #[error("grids are incompatible: {0}")]
    Incompatible(String),
}

/// Tensor grid of `x ≥ 0` and `t > 0` values, both strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalGrid {
    xs: Vec<f64>,
    ts: Vec<f64>,
}

fn check_axis(axis: &'static str, v: &[f64], ok: impl Fn(f64) -> bool) -> Result<(), GridError> {
    if v.is_empty() {
        return Err(GridError::Empty { axis });
    }
    for (i, &x) in v.iter().enumerate() {
        if !(x.is_finite() && ok(x)) {
            return Err(GridError::OutOfRange { axis, index: i, value: x });
        }
        if i > 0 && !(x > v[i - 1]) {
            return Err(GridError::NotIncreasing { axis, index: i });
        }
    }
    Ok(())
}

impl EvalGrid {
    pub fn new(xs: Vec<f64>, ts: Vec<f64>) -> Result<Self, GridError> {
        check_axis("xs", &xs, |x| x >= 0.0)?;
        check_axis("ts", &ts, |t| t > 0.0)?;
        Ok(Self { xs, ts })
    }

    /// `n` equally spaced points from `start` to `stop` inclusive on each axis.
    pub fn uniform(x: (f64, f64, usize), t: (f64, f64, usize)) -> Result<Self, GridError> {
        Self::new(linspace(x.0, x.1, x.2), linspace(t.0, t.1, t.2))
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn nt(&self) -> usize {
        self.ts.len()
    }

    pub fn len(&self) -> usize {
        self.nx() * self.nt()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of `(ix, it)`; fields are stored x-major.
    pub fn index(&self, ix: usize, it: usize) -> usize {
        ix * self.nt() + it
    }

    /// `(x, t)` at a flat index.
    pub fn point(&self, k: usize) -> (f64, f64) {
        (self.xs[k / self.nt()], self.ts[k % self.nt()])
    }
}

pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![start],
        _ => {
            let h = (stop - start) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { stop } else { start + h * i as f64 }).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    AnalyticFractional,
    AnalyticHeat,
    OracleFd,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::AnalyticFractional => "analytic-fractional",
            Provenance::AnalyticHeat => "analytic-heat",
            Provenance::OracleFd => "oracle-fd",
        }
    }
}

/// Values on an [`EvalGrid`], stored x-major, with per-point error estimates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionField {
    pub grid: EvalGrid,
    pub values: Vec<f64>,
    pub error_estimates: Vec<f64>,
    pub provenance: Provenance,
    /// Flat indices whose evaluation missed its tolerance; their values are
    /// best estimates (or NaN when no estimate exists).
    pub unconverged: Vec<usize>,
}

impl SolutionField {
    pub fn value(&self, ix: usize, it: usize) -> f64 {
        self.values[self.grid.index(ix, it)]
    }

    pub fn error_estimate(&self, ix: usize, it: usize) -> f64 {
        self.error_estimates[self.grid.index(ix, it)]
    }

    /// Values at fixed `it`, ordered by x.
    pub fn column(&self, it: usize) -> Vec<f64> {
        (0..self.grid.nx()).map(|ix| self.value(ix, it)).collect()
    }

    /// Values at fixed `ix`, ordered by t.
    pub fn row(&self, ix: usize) -> &[f64] {
        let nt = self.grid.nt();
        &self.values[ix * nt..(ix + 1) * nt]
    }

    pub fn is_converged(&self) -> bool {
        self.unconverged.is_empty()
    }

    /// Build from a point function, with zero error estimates.
    pub fn from_fn(grid: EvalGrid, provenance: Provenance, f: impl Fn(f64, f64) -> f64) -> Self {
        let values: Vec<f64> = (0..grid.len()).map(|k| {
            let (x, t) = grid.point(k);
            f(x, t)
        }).collect();
        let n = values.len();
        Self {
            grid,
            values,
            error_estimates: vec![0.0; n],
            provenance,
            unconverged: vec![],
        }
    }
}

/// Pointwise and aggregate discrepancy between two fields.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub linf: f64,
    /// Root-mean-square of the pointwise differences.
    pub l2: f64,
    /// `linf` divided by the largest magnitude of the reference field.
    pub rel_linf: f64,
    /// Differences `a − b`, x-major on `grid`.
    pub pointwise: Vec<f64>,
    pub grid: EvalGrid,
}

impl ErrorReport {
    pub fn from_differences(grid: EvalGrid, pointwise: Vec<f64>, reference_scale: f64) -> Self {
        let linf = pointwise.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let n = pointwise.len().max(1) as f64;
        let l2 = (pointwise.iter().map(|d| d * d).sum::<f64>() / n).sqrt();
        let rel_linf = if reference_scale > 0.0 { linf / reference_scale } else { linf };
        Self {
            linf,
            l2,
            rel_linf,
            pointwise,
            grid,
        }
    }
}
