//! Independent finite-difference reference: L1 in time, centered second
//! differences in space, fully implicit, on a truncated interval `[0, L]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{ErrorReport, EvalGrid, GridError, Provenance, SolutionField};
use crate::solvers::{ProblemKind, ProblemSpec};
use crate::specfun::{gamma, l1_weights, AsymptoticParams};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error("singular tridiagonal system at row {row}")]
    SingularSystem { row: usize },
    #[error("incompatible grids: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FarBoundary {
    /// `u(L, t) = f(L)`.
    DirichletFromFTail,
    /// `u_x(L, t) = 0`.
    HomogeneousNeumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub domain_length: f64,
    pub nx: usize,
    pub nt: usize,
    pub far_boundary: FarBoundary,
}

impl OracleConfig {
    pub fn new(domain_length: f64, nx: usize, nt: usize, far_boundary: FarBoundary) -> Result<Self, OracleError> {
        let cfg = Self {
            domain_length,
            nx,
            nt,
            far_boundary,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.domain_length > 0.0 && self.domain_length.is_finite()) {
            return Err(OracleError::Config(format!("domain_length = {} must be positive", self.domain_length)));
        }
        if self.nx < 8 || self.nt < 8 {
            return Err(OracleError::Config(format!("nx = {} and nt = {} must both be at least 8", self.nx, self.nt)));
        }
        Ok(())
    }

    /// Domain long enough that `exp(−b L / (λ T^{α/2})) < 1e−8`, where `b` is
    /// the exponential decay rate of the step response.
    pub fn default_for(p: &ProblemSpec, nx: usize, nt: usize) -> Result<Self, OracleError> {
        let nu = p.order.nu();
        let b = AsymptoticParams::for_nu(nu).map_err(|e| OracleError::Config(e.to_string()))?.b_cor4;
        let length = 1e8f64.ln() * p.lambda.value() * p.horizon.powf(nu) / b;
        let far = match p.kind {
            ProblemKind::Dirichlet => FarBoundary::DirichletFromFTail,
            _ => FarBoundary::HomogeneousNeumann,
        };
        Self::new(length * (1.0 + 1e-12), nx, nt, far)
    }
}

/// Thomas algorithm for `sub[i] x[i−1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [f64], work: &mut [f64]) -> Result<(), OracleError> {
    let n = diag.len();
    let mut beta = diag[0];
    if beta == 0.0 {
        return Err(OracleError::SingularSystem { row: 0 });
    }
    rhs[0] /= beta;
    for i in 1..n {
        work[i] = sup[i - 1] / beta;
        beta = diag[i] - sub[i] * work[i];
        if beta == 0.0 {
            return Err(OracleError::SingularSystem { row: i });
        }
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= work[i + 1] * rhs[i + 1];
    }
    Ok(())
}

/// Implicit step operator `c u − λ² Δ_h u` on nodes `0..=nx` with rows for
/// Dirichlet nodes replaced by identities.
struct Stepper {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
    work: Vec<f64>,
    dirichlet_left: bool,
    dirichlet_right: bool,
    dx: f64,
    r: f64,
}

impl Stepper {
    fn new(kind: ProblemKind, far: FarBoundary, nx: usize, dx: f64, lambda: f64, c: f64) -> Self {
        let n = nx + 1;
        let r = lambda * lambda / (dx * dx);
        let mut sub = vec![-r; n];
        let mut diag = vec![c + 2.0 * r; n];
        let mut sup = vec![-r; n];
        let dirichlet_left = kind == ProblemKind::Dirichlet;
        let dirichlet_right = far == FarBoundary::DirichletFromFTail;
        if dirichlet_left {
            diag[0] = 1.0;
            sup[0] = 0.0;
        } else {
            // ghost node u_{−1} = u_1 − 2 dx g
            sup[0] = -2.0 * r;
        }
        if dirichlet_right {
            diag[nx] = 1.0;
            sub[nx] = 0.0;
        } else {
            sub[nx] = -2.0 * r;
        }
        sub[0] = 0.0;
        sup[nx] = 0.0;
        Self {
            sub,
            diag,
            sup,
            work: vec![0.0; n],
            dirichlet_left,
            dirichlet_right,
            dx,
            r,
        }
    }

    /// Solve in place; `rhs` holds the time-derivative part on entry.
    fn solve(&mut self, rhs: &mut [f64], left: f64, right: f64) -> Result<(), OracleError> {
        let nx = rhs.len() - 1;
        if self.dirichlet_left {
            rhs[0] = left;
        } else {
            rhs[0] -= 2.0 * self.r * self.dx * left;
        }
        if self.dirichlet_right {
            rhs[nx] = right;
        }
        solve_tridiagonal(&self.sub, &self.diag, &self.sup, rhs, &mut self.work)
    }
}

struct Setup {
    xs: Vec<f64>,
    ts: Vec<f64>,
    dt: f64,
    far_value: f64,
}

fn setup(p: &ProblemSpec, cfg: &OracleConfig) -> Result<Setup, OracleError> {
    cfg.validate()?;
    let dx = cfg.domain_length / cfg.nx as f64;
    let dt = p.horizon / cfg.nt as f64;
    let xs: Vec<f64> = (0..=cfg.nx).map(|i| if i == cfg.nx { cfg.domain_length } else { i as f64 * dx }).collect();
    let ts: Vec<f64> = (1..=cfg.nt).map(|m| if m == cfg.nt { p.horizon } else { m as f64 * dt }).collect();
    Ok(Setup {
        far_value: p.f.eval(cfg.domain_length),
        xs,
        ts,
        dt,
    })
}

fn field(xs: Vec<f64>, ts: Vec<f64>, levels: &[Vec<f64>]) -> Result<SolutionField, OracleError> {
    let (nx, nt) = (xs.len(), ts.len());
    let mut values = vec![0.0; nx * nt];
    for (it, level) in levels.iter().enumerate() {
        for (ix, &v) in level.iter().enumerate() {
            values[ix * nt + it] = v;
        }
    }
    Ok(SolutionField {
        grid: EvalGrid::new(xs, ts)?,
        values,
        error_estimates: vec![0.0; nx * nt],
        provenance: Provenance::OracleFd,
        unconverged: vec![],
    })
}

/// Finite-difference solution of `p` on `[0, L] × (0, T]`.
///
/// The returned field holds every node `x_i = i L / nx` at every level
/// `t_m = m T / nt`, `m ≥ 1`. Its error estimates are zero: the scheme
/// carries no a-posteriori estimate.
pub fn fd_solve(p: &ProblemSpec, cfg: &OracleConfig) -> Result<SolutionField, OracleError> {
    let s = setup(p, cfg)?;
    let alpha = p.alpha();
    let b = l1_weights(alpha, cfg.nt).map_err(|e| OracleError::Config(e.to_string()))?;
    let c = s.dt.powf(-alpha) / gamma(2.0 - alpha);
    let dx = cfg.domain_length / cfg.nx as f64;
    let mut stepper = Stepper::new(p.kind, cfg.far_boundary, cfg.nx, dx, p.lambda.value(), c);
    let g = p.boundary();

    let n = cfg.nx + 1;
    let mut u: Vec<f64> = s.xs.iter().map(|&x| p.f.eval(x)).collect();
    // increments[j] = u^{j+1} − u^j
    let mut increments: Vec<Vec<f64>> = Vec::with_capacity(cfg.nt);
    let mut levels = Vec::with_capacity(cfg.nt);
    let mut rhs = vec![0.0; n];
    for m in 1..=cfg.nt {
        // c b_0 u^m − λ²Δu^m = c u^{m−1} − c Σ_{k≥1} b_k (u^{m−k} − u^{m−k−1})
        for i in 0..n {
            rhs[i] = c * u[i];
        }
        for k in 1..m {
            let w = c * b[k];
            let inc = &increments[m - k - 1];
            for i in 0..n {
                rhs[i] -= w * inc[i];
            }
        }
        stepper.solve(&mut rhs, g.eval(s.ts[m - 1]), s.far_value)?;
        increments.push(rhs.iter().zip(&u).map(|(new, old)| new - old).collect());
        u.copy_from_slice(&rhs);
        levels.push(u.clone());
    }
    field(s.xs, s.ts, &levels)
}

/// Backward-Euler solution of the classical equation `c_t = λ² c_xx` with
/// the same data, discretization in space and boundary treatment.
pub fn heat_backward_euler(p: &ProblemSpec, cfg: &OracleConfig) -> Result<SolutionField, OracleError> {
    let s = setup(p, cfg)?;
    let dx = cfg.domain_length / cfg.nx as f64;
    let c = 1.0 / s.dt;
    let mut stepper = Stepper::new(p.kind, cfg.far_boundary, cfg.nx, dx, p.lambda.value(), c);
    let g = p.boundary();
    let mut u: Vec<f64> = s.xs.iter().map(|&x| p.f.eval(x)).collect();
    let mut levels = Vec::with_capacity(cfg.nt);
    for m in 1..=cfg.nt {
        let mut rhs: Vec<f64> = u.iter().map(|v| c * v).collect();
        stepper.solve(&mut rhs, g.eval(s.ts[m - 1]), s.far_value)?;
        u = rhs;
        levels.push(u.clone());
    }
    field(s.xs, s.ts, &levels)
}

/// Trapezoid-rule integral of `u(·, t)` over `[0, L]` for each time level.
pub fn discrete_mass(field: &SolutionField) -> Vec<f64> {
    let xs = field.grid.xs();
    (0..field.grid.nt())
        .map(|it| {
            xs.windows(2)
                .enumerate()
                .map(|(i, w)| 0.5 * (w[1] - w[0]) * (field.value(i, it) + field.value(i + 1, it)))
                .sum()
        })
        .collect()
}

fn find_time(ts: &[f64], t: f64) -> Option<usize> {
    let i = ts.partition_point(|&s| s < t - 1e-9 * t.abs());
    (i < ts.len() && (ts[i] - t).abs() <= 1e-9 * t.abs()).then_some(i)
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> Option<f64> {
    let n = xs.len();
    let tol = 1e-12 * x.abs().max(1.0);
    if x < xs[0] - tol || x > xs[n - 1] + tol {
        return None;
    }
    if n == 1 {
        return Some(ys[0]);
    }
    let i = xs.partition_point(|&s| s <= x).clamp(1, n - 1);
    let w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    Some(ys[i - 1] + w * (ys[i] - ys[i - 1]))
}

/// Project `fine` onto `target`'s grid: linear in x, exact time levels.
fn project(fine: &SolutionField, target: &EvalGrid) -> Result<Vec<f64>, String> {
    let fx = fine.grid.xs();
    let mut out = vec![0.0; target.len()];
    for (it, &t) in target.ts().iter().enumerate() {
        let jt = find_time(fine.grid.ts(), t).ok_or_else(|| format!("time level {t} is missing"))?;
        let column = fine.column(jt);
        for (ix, &x) in target.xs().iter().enumerate() {
            out[target.index(ix, it)] = interpolate(fx, &column, x).ok_or_else(|| format!("x = {x} is outside the other grid"))?;
        }
    }
    Ok(out)
}

/// Differences `a − b` on the coarser of the two grids (the one with fewer
/// x nodes); the other field is interpolated linearly in x. Every time level
/// of the coarser grid must be present in the finer one.
pub fn compare(a: &SolutionField, b: &SolutionField) -> Result<ErrorReport, OracleError> {
    let a_is_target = a.grid.nx() <= b.grid.nx();
    let (target, other) = if a_is_target { (a, b) } else { (b, a) };
    let projected = project(other, &target.grid).map_err(OracleError::Incompatible)?;
    let (va, vb): (&[f64], &[f64]) = if a_is_target { (&a.values, &projected) } else { (&projected, &b.values) };
    let diff = va.iter().zip(vb).map(|(x, y)| x - y).collect();
    let scale = vb.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(ErrorReport::from_differences(target.grid.clone(), diff, scale))
}
