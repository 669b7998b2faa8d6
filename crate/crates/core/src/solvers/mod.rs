//! Closed-form solutions of the three quarter-plane problems, their classical
//! (`α = 1`) counterparts, order sweeps and a discrete PDE-residual check.

mod data;
mod residual;
mod terms;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use data::{FunctionSpec, ProblemError, ProblemKind, ProblemSpec};
pub use residual::{residual_check, ResidualReport};

use crate::field::{ErrorReport, EvalGrid, GridError, Provenance, SolutionField};
use crate::kernels::{Diffusivity, Medium};
use crate::specfun::{EvalPolicy, SpecFunError};
use terms::{boundary_flux_term, boundary_value_term, heat_flux_term, initial_term, Profile, Term};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("expected a {expected} problem, got {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("grid time {t} exceeds the horizon {horizon}")]
    OutsideHorizon { t: f64, horizon: f64 },
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

/// Accuracy targets for the pointwise quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub policy: EvalPolicy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            policy: EvalPolicy::default(),
        }
    }
}

impl SolveOptions {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

fn medium(p: &ProblemSpec, opts: &SolveOptions) -> Medium {
    Medium::new(p.order, p.lambda).with_policy(opts.policy)
}

fn check_horizon(p: &ProblemSpec, grid: &EvalGrid) -> Result<(), SolveError> {
    let t = grid.ts()[grid.nt() - 1];
    if t > p.horizon * (1.0 + 1e-12) {
        return Err(SolveError::OutsideHorizon { t, horizon: p.horizon });
    }
    Ok(())
}

fn expect_kind(p: &ProblemSpec, kind: ProblemKind) -> Result<(), SolveError> {
    if p.kind != kind {
        return Err(SolveError::WrongKind {
            expected: kind.as_str(),
            found: p.kind.as_str(),
        });
    }
    Ok(())
}

fn evaluate(grid: &EvalGrid, provenance: Provenance, point: impl Fn(f64, f64) -> Term + Sync) -> SolutionField {
    let terms: Vec<Term> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let (x, t) = grid.point(k);
            point(x, t)
        })
        .collect();
    let unconverged = terms
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.converged || !t.value.is_finite())
        .map(|(k, _)| k)
        .collect();
    SolutionField {
        grid: grid.clone(),
        values: terms.iter().map(|t| t.value).collect(),
        error_estimates: terms.iter().map(|t| t.error).collect(),
        provenance,
        unconverged,
    }
}

/// Value of the solution at one point.
fn point_value(p: &ProblemSpec, profile: &Profile, x: f64, t: f64, opts: &SolveOptions) -> Term {
    let g = p.boundary();
    match p.kind {
        ProblemKind::Dirichlet => initial_term(profile, &p.f, -1.0, x, t, opts) + boundary_value_term(profile, &g, x, t, opts),
        ProblemKind::NeumannZero => initial_term(profile, &p.f, 1.0, x, t, opts),
        ProblemKind::Flux => initial_term(profile, &p.f, 1.0, x, t, opts) + boundary_flux_term(profile, &g, x, t, opts),
    }
}

/// Solution of any of the three problems at the grid points.
pub fn solve(p: &ProblemSpec, grid: &EvalGrid, opts: &SolveOptions) -> Result<SolutionField, SolveError> {
    check_horizon(p, grid)?;
    let profile = Profile::Fractional(medium(p, opts));
    Ok(evaluate(grid, Provenance::AnalyticFractional, |x, t| point_value(p, &profile, x, t, opts)))
}

/// Prescribed boundary value: Green-kernel term for `f` plus the boundary
/// kernel convolved with `g`.
pub fn solve_dirichlet(p: &ProblemSpec, grid: &EvalGrid, opts: &SolveOptions) -> Result<SolutionField, SolveError> {
    expect_kind(p, ProblemKind::Dirichlet)?;
    solve(p, grid, opts)
}

/// Zero boundary flux: even extension of `f` to the whole line.
pub fn solve_neumann_zero(p: &ProblemSpec, grid: &EvalGrid, opts: &SolveOptions) -> Result<SolutionField, SolveError> {
    expect_kind(p, ProblemKind::NeumannZero)?;
    solve(p, grid, opts)
}

/// Prescribed boundary flux `c_x(0, t) = g(t)`.
pub fn solve_flux(p: &ProblemSpec, grid: &EvalGrid, opts: &SolveOptions) -> Result<SolutionField, SolveError> {
    expect_kind(p, ProblemKind::Flux)?;
    solve(p, grid, opts)
}

/// Classical half-line Dirichlet solution for `c_t = λ² c_xx`.
pub fn heat_dirichlet_limit(
    g: &FunctionSpec,
    f: &FunctionSpec,
    grid: &EvalGrid,
    lambda: Diffusivity,
    opts: &SolveOptions,
) -> Result<SolutionField, SolveError> {
    f.validate().map_err(|e| e.within("f"))?;
    f.check_bounded().map_err(|e| e.within("f"))?;
    g.validate().map_err(|e| e.within("g"))?;
    let profile = Profile::Gaussian { lambda: lambda.value() };
    Ok(evaluate(grid, Provenance::AnalyticHeat, |x, t| {
        initial_term(&profile, f, -1.0, x, t, opts) + boundary_value_term(&profile, g, x, t, opts)
    }))
}

/// Classical half-line solution with prescribed flux `c_x(0, t) = g(t)`.
pub fn heat_flux_limit(
    g: &FunctionSpec,
    f: &FunctionSpec,
    grid: &EvalGrid,
    lambda: Diffusivity,
    opts: &SolveOptions,
) -> Result<SolutionField, SolveError> {
    f.validate().map_err(|e| e.within("f"))?;
    f.check_bounded().map_err(|e| e.within("f"))?;
    g.validate().map_err(|e| e.within("g"))?;
    let profile = Profile::Gaussian { lambda: lambda.value() };
    Ok(evaluate(grid, Provenance::AnalyticHeat, |x, t| {
        initial_term(&profile, f, 1.0, x, t, opts) + heat_flux_term(lambda.value(), g, x, t, opts)
    }))
}

/// The classical solution matching `p.kind` (zero flux is the flux problem with `g ≡ 0`).
pub fn heat_limit(p: &ProblemSpec, grid: &EvalGrid, opts: &SolveOptions) -> Result<SolutionField, SolveError> {
    let g = p.boundary();
    match p.kind {
        ProblemKind::Dirichlet => heat_dirichlet_limit(&g, &p.f, grid, p.lambda, opts),
        ProblemKind::NeumannZero | ProblemKind::Flux => heat_flux_limit(&g, &p.f, grid, p.lambda, opts),
    }
}

/// Distance from a fractional solution to its classical counterpart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub alpha: f64,
    pub report: ErrorReport,
}

/// Difference `a − b` of two fields on the same grid.
pub(crate) fn field_difference(a: &SolutionField, b: &SolutionField) -> ErrorReport {
    let diff = a.values.iter().zip(&b.values).map(|(x, y)| x - y).collect();
    let scale = b.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    ErrorReport::from_differences(a.grid.clone(), diff, scale)
}

/// For each `α` in `alphas` (increasing, inside `(0, 1)`), the distance on
/// `grid` between the solution of `p` at that order and the classical solution.
pub fn alpha_sweep(p: &ProblemSpec, grid: &EvalGrid, alphas: &[f64], opts: &SolveOptions) -> Result<Vec<SweepPoint>, SolveError> {
    if alphas.is_empty() {
        return Err(SolveError::InvalidSweep("no orders given".into()));
    }
    if let Some(&a) = alphas.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
        return Err(SolveError::InvalidSweep(format!("order {a} is outside (0, 1)")));
    }
    if alphas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(SolveError::InvalidSweep("orders must be strictly increasing".into()));
    }
    let classical = heat_limit(p, grid, opts)?;
    alphas
        .iter()
        .map(|&alpha| {
            let field = solve(&p.with_alpha(alpha)?, grid, opts)?;
            Ok(SweepPoint {
                alpha,
                report: field_difference(&field, &classical),
            })
        })
        .collect()
}

/// One-sided derivative `c_x(0⁺, t)` from values at `0, h, 2h`, after one
/// Richardson step (second order in `h`).
pub fn boundary_derivative(p: &ProblemSpec, t: f64, h: f64, opts: &SolveOptions) -> Result<f64, SolveError> {
    let grid = EvalGrid::new(vec![0.0, h, 2.0 * h], vec![t])?;
    let field = solve(p, &grid, opts)?;
    let (c0, c1, c2) = (field.values[0], field.values[1], field.values[2]);
    Ok((-3.0 * c0 + 4.0 * c1 - c2) / (2.0 * h))
}

#[cfg(test)]
mod tests;
