use serde::Serialize;

use super::SolveError;
use crate::field::{ErrorReport, EvalGrid, SolutionField};
use crate::specfun::{gamma, l1_weights};

/// Discrete residual of `D_t^α u − λ² u_xx` on the interior of a field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub report: ErrorReport,
    pub threshold: f64,
    /// Flat indices (on `report.grid`) where the residual exceeds `threshold`.
    pub flagged: Vec<usize>,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.flagged.is_empty()
    }

    /// Observed order `log2(coarse / fine)` of the max-norm between two
    /// refinement levels with halved steps.
    pub fn order(coarse: &ResidualReport, fine: &ResidualReport) -> f64 {
        (coarse.report.linf / fine.report.linf).log2()
    }
}

/// Step `h` if `v[i] = origin + (i + offset) h` for all `i`.
fn uniform_step(v: &[f64], origin: f64, offset: usize) -> Option<f64> {
    let n = v.len() - 1 + offset;
    let h = (v[v.len() - 1] - origin) / n as f64;
    v.iter()
        .enumerate()
        .all(|(i, &x)| (x - (origin + (i + offset) as f64 * h)).abs() <= 1e-9 * h.max(x.abs()))
        .then_some(h)
}

/// Residual of a sampled field against the equation.
///
/// `field.grid` must be uniform in `x` and have times `dt, 2dt, …`;
/// `initial[ix]` is the field at `t = 0`. The Caputo derivative is the L1
/// approximation and `u_xx` the centered second difference, so an exact
/// solution leaves a residual of order `dt^{2−α} + dx²`.
pub fn residual_check(
    field: &SolutionField,
    initial: &[f64],
    alpha: f64,
    lambda: f64,
    threshold: f64,
) -> Result<ResidualReport, SolveError> {
    let grid = &field.grid;
    let (nx, nt) = (grid.nx(), grid.nt());
    if nx < 3 || nt < 2 {
        return Err(SolveError::GridTooSmall(format!("need at least 3 x and 2 t points, got {nx} x {nt}")));
    }
    if initial.len() != nx {
        return Err(SolveError::GridTooSmall(format!("initial row has {} entries, grid has {nx}", initial.len())));
    }
    let dx = uniform_step(grid.xs(), grid.xs()[0], 0).ok_or_else(|| SolveError::GridTooSmall("x axis is not uniform".into()))?;
    let dt = uniform_step(grid.ts(), 0.0, 1).ok_or_else(|| SolveError::GridTooSmall("t axis is not dt, 2dt, ...".into()))?;
    let b = l1_weights(alpha, nt)?;
    let scale = dt.powf(-alpha) / gamma(2.0 - alpha);
    let lam2 = lambda * lambda;

    let interior = EvalGrid::new(grid.xs()[1..nx - 1].to_vec(), grid.ts().to_vec())?;
    let mut pointwise = Vec::with_capacity(interior.len());
    for ix in 1..nx - 1 {
        let mut u = Vec::with_capacity(nt + 1);
        u.push(initial[ix]);
        u.extend_from_slice(field.row(ix));
        for m in 1..=nt {
            let d: f64 = (0..m).map(|k| b[k] * (u[m - k] - u[m - k - 1])).sum::<f64>() * scale;
            let it = m - 1;
            let uxx = (field.value(ix - 1, it) - 2.0 * field.value(ix, it) + field.value(ix + 1, it)) / (dx * dx);
            pointwise.push(d - lam2 * uxx);
        }
    }
    let flagged = pointwise
        .iter()
        .enumerate()
        .filter(|(_, r)| !(r.abs() <= threshold))
        .map(|(k, _)| k)
        .collect();
    Ok(ResidualReport {
        report: ErrorReport::from_differences(interior, pointwise, 0.0),
        threshold,
        flagged,
    })
}
