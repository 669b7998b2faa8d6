//! Pointwise evaluation of the integral representations, in similarity
//! variables. With `s = λ t^{α/2}` and `η = x / s`:
//!
//! ```text
//! initial-datum term   ½ ∫₀^∞ [M(|η−u|) ∓ M(η+u)] f(s u) du
//! boundary-value term  ∫_η^∞ M(r) g(t (1 − (η/r)^{2/α})) dr
//! boundary-flux term   −s ∫_η^∞ M(r) r G(η/r) dr,   G(y) = ∫_y^1 g(t (1 − w^{2/α})) dw
//! ```
//!
//! The flux term is `−∫_x^∞` of the boundary-value term with the two
//! integrations exchanged.

use std::cell::Cell;
use std::f64::consts::PI;

use super::data::FunctionSpec;
use super::SolveOptions;
use crate::kernels::Medium;
use crate::quadrature::{integrate_to_infinity_with, integrate_with, QuadError, QuadOptions, QuadResult, TailBound};
use crate::specfun::{mainardi_tail_bound, SpecFunError};

/// Similarity profile: the Mainardi function, or the Gaussian for the
/// classical equation.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Profile {
    Fractional(Medium),
    Gaussian { lambda: f64 },
}

impl Profile {
    pub fn scale(&self, t: f64) -> f64 {
        match self {
            Profile::Fractional(m) => m.scale(t),
            Profile::Gaussian { lambda } => lambda * t.sqrt(),
        }
    }

    pub fn eval(&self, eta: f64) -> Result<f64, SpecFunError> {
        match self {
            Profile::Fractional(m) => m.profile(eta),
            Profile::Gaussian { .. } => Ok((-0.25 * eta * eta).exp() / PI.sqrt()),
        }
    }

    /// `2/α`.
    fn time_power(&self) -> f64 {
        match self {
            Profile::Fractional(m) => 1.0 / m.nu(),
            Profile::Gaussian { .. } => 2.0,
        }
    }

    /// Majorant of `σ ↦ profile(a + σ)`.
    fn tail(&self, a: f64) -> TailBound {
        match self {
            Profile::Fractional(m) => mainardi_tail_bound(m.nu(), a).expect("nu validated by FractionalOrder"),
            Profile::Gaussian { .. } => TailBound::StretchedExponential {
                prefactor: (-0.25 * a * a).exp() / PI.sqrt(),
                rate: 0.25,
                power: 2.0,
            },
        }
    }
}

/// Value, error estimate and convergence flag of one contribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Term {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

impl Term {
    pub const ZERO: Term = Term {
        value: 0.0,
        error: 0.0,
        converged: true,
    };

    pub fn exact(value: f64) -> Term {
        Term {
            value,
            error: 0.0,
            converged: true,
        }
    }

    fn from_quad(r: Result<QuadResult, QuadError>) -> Term {
        match r {
            Ok(q) => Term {
                value: q.value,
                error: q.abs_error_estimate,
                converged: true,
            },
            Err(QuadError::ToleranceNotMet { best }) => Term {
                value: best.value,
                error: best.abs_error_estimate,
                converged: false,
            },
            Err(_) => Term {
                value: f64::NAN,
                error: f64::INFINITY,
                converged: false,
            },
        }
    }

    pub fn scaled(self, c: f64) -> Term {
        Term {
            value: c * self.value,
            error: c.abs() * self.error,
            converged: self.converged,
        }
    }
}

impl std::ops::Add for Term {
    type Output = Term;
    fn add(self, o: Term) -> Term {
        Term {
            value: self.value + o.value,
            error: self.error + o.error,
            converged: self.converged && o.converged,
        }
    }
}

fn quad_options() -> QuadOptions {
    QuadOptions::default()
}

/// Map a data breakpoint `τ` of `g` on `[0, t)` through `τ = t (1 − w^q)`.
fn w_of_tau(tau: f64, t: f64, q: f64) -> Option<f64> {
    (tau > 0.0 && tau < t).then(|| (1.0 - tau / t).powf(1.0 / q))
}

/// `½ ∫₀^∞ [M(|η−u|) + sign · M(η+u)] f(s u) du`, `sign = ±1`.
pub(crate) fn initial_term(profile: &Profile, f: &FunctionSpec, sign: f64, x: f64, t: f64, opts: &SolveOptions) -> Term {
    if f.is_zero() {
        return Term::ZERO;
    }
    let s = profile.scale(t);
    let eta = x / s;
    if sign < 0.0 && eta == 0.0 {
        return Term::ZERO;
    }
    let integrand = |u: f64| {
        let a = profile.eval((eta - u).abs());
        let b = profile.eval(eta + u);
        match (a, b) {
            (Ok(a), Ok(b)) => 0.5 * (a + sign * b) * f.eval(s * u),
            _ => f64::NAN,
        }
    };
    let kinks: Vec<f64> = f.kinks().iter().filter(|&&p| p > 0.0).map(|&p| p / s).collect();
    let mut head = Term::ZERO;
    if eta > 0.0 {
        let mut pts = vec![0.0];
        pts.extend(kinks.iter().copied().filter(|&k| k < eta));
        pts.push(eta);
        head = Term::from_quad(integrate_with(integrand, &pts, opts.rel_tol, 0.5 * opts.abs_tol, quad_options()));
    }
    // For u >= η the integrand is bounded by sup|f| · M(u − η).
    let bound = profile.tail(0.0).scaled(f.sup_abs(f64::INFINITY));
    let tail = Term::from_quad(integrate_to_infinity_with(
        integrand,
        eta,
        &kinks,
        bound,
        opts.rel_tol,
        0.5 * opts.abs_tol,
        quad_options(),
    ));
    head + tail
}

/// `∫_η^∞ M(r) g(t (1 − (η/r)^{2/α})) dr`; equals `g(t)` at `x = 0`.
pub(crate) fn boundary_value_term(profile: &Profile, g: &FunctionSpec, x: f64, t: f64, opts: &SolveOptions) -> Term {
    if g.is_zero() {
        return Term::ZERO;
    }
    if x == 0.0 {
        return Term::exact(g.eval(t));
    }
    let s = profile.scale(t);
    let eta = x / s;
    let q = profile.time_power();
    let integrand = |r: f64| match profile.eval(r) {
        Ok(m) if m == 0.0 => 0.0,
        Ok(m) => m * g.eval(t * (1.0 - (eta / r).powf(q))),
        Err(_) => f64::NAN,
    };
    let breaks: Vec<f64> = g.kinks().iter().filter_map(|&tau| w_of_tau(tau, t, q)).map(|w| eta / w).collect();
    let bound = profile.tail(eta).scaled(g.sup_abs(t));
    Term::from_quad(integrate_to_infinity_with(
        integrand,
        eta,
        &breaks,
        bound,
        opts.rel_tol,
        opts.abs_tol,
        quad_options(),
    ))
}

/// `G(y) = ∫_y^1 g(t (1 − w^q)) dw`.
fn flux_inner(g: &FunctionSpec, y: f64, t: f64, q: f64, opts: &SolveOptions) -> Term {
    if let Some(c) = g.as_constant() {
        return Term::exact(c * (1.0 - y));
    }
    let mut pts = vec![y];
    let mut ws: Vec<f64> = g.kinks().iter().filter_map(|&tau| w_of_tau(tau, t, q)).filter(|&w| w > y).collect();
    ws.sort_by(f64::total_cmp);
    pts.extend(ws);
    pts.push(1.0);
    let inner_tol = 0.1 * opts.rel_tol;
    Term::from_quad(integrate_with(
        |w: f64| g.eval(t * (1.0 - w.powf(q))),
        &pts,
        inner_tol,
        0.1 * opts.abs_tol,
        quad_options(),
    ))
}

/// `−∫_x^∞ (boundary-value term at abscissa ξ) dξ = −s ∫_η^∞ M(r) r G(η/r) dr`.
pub(crate) fn boundary_flux_term(profile: &Profile, g: &FunctionSpec, x: f64, t: f64, opts: &SolveOptions) -> Term {
    if g.is_zero() {
        return Term::ZERO;
    }
    let s = profile.scale(t);
    let eta = x / s;
    let q = profile.time_power();
    let inner_error = Cell::new(0.0f64);
    let inner_ok = Cell::new(true);
    let integrand = |r: f64| {
        if r == 0.0 {
            return 0.0;
        }
        match profile.eval(r) {
            Ok(m) if m == 0.0 => 0.0,
            Ok(m) => {
                let inner = flux_inner(g, eta / r, t, q, opts);
                inner_error.set(inner_error.get().max(inner.error));
                inner_ok.set(inner_ok.get() && inner.converged);
                m * r * inner.value
            }
            Err(_) => f64::NAN,
        }
    };
    let mut breaks: Vec<f64> = g.kinks().iter().filter_map(|&tau| w_of_tau(tau, t, q)).map(|w| eta / w).collect();
    if eta == 0.0 {
        breaks.clear();
    }
    // |r G(η/r)| <= r sup|g| on [0, t]; r = η + σ.
    let bound = profile.tail(eta).with_linear_factor(eta).scaled(g.sup_abs(t));
    let outer = Term::from_quad(integrate_to_infinity_with(
        integrand,
        eta,
        &breaks,
        bound,
        opts.rel_tol,
        opts.abs_tol / s,
        quad_options(),
    ));
    // ∫ M(r) r dr over the half-line is 1/Γ(1 + α/2) <= 1.2.
    let inner = Term {
        value: 0.0,
        error: 1.2 * inner_error.get(),
        converged: inner_ok.get(),
    };
    (outer + inner).scaled(-s)
}

/// The same flux term evaluated as the iterated integral
/// `−∫_x^∞ ∫_{η(ξ)}^∞ … dr dξ`, with the outer tail cut by the
/// exponential decay of the step response.
#[cfg(test)]
pub(crate) fn boundary_flux_term_nested(medium: &Medium, g: &FunctionSpec, x: f64, t: f64, opts: &SolveOptions) -> Term {
    let profile = Profile::Fractional(*medium);
    let s = medium.scale(t);
    let eta = x / s;
    let inner = |xi: f64| {
        let term = boundary_value_term(&profile, g, xi, t, opts);
        if term.converged {
            term.value
        } else {
            f64::NAN
        }
    };
    let bound = match crate::specfun::step_response_tail_bound(medium.nu(), eta).expect("nu validated") {
        TailBound::Exponential { prefactor, rate } => TailBound::Exponential {
            prefactor: prefactor * g.sup_abs(t),
            rate: rate / s,
        },
        other => other,
    };
    Term::from_quad(integrate_to_infinity_with(
        inner,
        x,
        &[],
        bound,
        opts.rel_tol,
        opts.abs_tol,
        quad_options(),
    ))
    .scaled(-1.0)
}

/// Classical flux term `−(2λ√t/√π) ∫₀^1 e^{−η²/(4u²)} g(t (1 − u²)) du`, the
/// substituted form of `−λ ∫₀^t e^{−x²/(4λ²(t−τ))} g(τ) / √(π(t−τ)) dτ`.
pub(crate) fn heat_flux_term(lambda: f64, g: &FunctionSpec, x: f64, t: f64, opts: &SolveOptions) -> Term {
    if g.is_zero() {
        return Term::ZERO;
    }
    let eta = x / (lambda * t.sqrt());
    let integrand = |u: f64| {
        if u == 0.0 {
            return if eta == 0.0 { g.eval(t) } else { 0.0 };
        }
        let e = eta / (2.0 * u);
        (-e * e).exp() * g.eval(t * (1.0 - u * u))
    };
    let mut pts = vec![0.0];
    let mut us: Vec<f64> = g.kinks().iter().filter_map(|&tau| w_of_tau(tau, t, 2.0)).collect();
    us.sort_by(f64::total_cmp);
    pts.extend(us);
    pts.push(1.0);
    let c = 2.0 * lambda * t.sqrt() / PI.sqrt();
    Term::from_quad(integrate_with(integrand, &pts, opts.rel_tol, opts.abs_tol / c, quad_options())).scaled(-c)
}
