//! Wright function `W(z; ρ, β)` for `z ≤ 0`, `ρ ∈ (−1, 0)`.
//!
//! Near the origin the power series is summed directly. Further out the
//! alternating series loses roughly `2Y / ln 10` digits to cancellation, where
//! `Y = (1−ν) ν^{ν/(1−ν)} |z|^{1/(1−ν)}` and `ν = −ρ`, so there the function
//! is computed from its Hankel-contour representation deformed onto the
//! steepest-descent path
//!
//! ```text
//! r(θ) = (sin νθ / sin θ)^{1/(1−ν)},   φ(θ) = r cos θ − r^ν cos νθ,
//! W(−x; −ν, β) = X^{1−β}/π ∫₀^π e^{Xφ} r^{1−β} [cos((1−β)θ) + (r'/r) sin((1−β)θ)] dθ,
//! ```
//!
//! with `X = x^{1/(1−ν)}`. On that path the integrand is non-oscillatory with a
//! single peak at `θ = 0`, where `Xφ = −Y`.

use std::f64::consts::PI;

use serde::Serialize;

use super::compensated::CompensatedSum;
use super::gamma::sinpi;
use super::{invalid, recip_gamma, AsymptoticParams, Crossover, EvalPolicy, SpecFunError, WrightIndex};
use crate::quadrature::{integrate_to_infinity, integrate_with, QuadOptions, TailBound};

/// Relative error of one series term: Γ evaluation plus the product.
const TERM_EPS: f64 = 16.0 * f64::EPSILON;
/// Tightest relative accuracy the contour quadrature can deliver.
const CONTOUR_REL_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WrightBranch {
    Origin,
    Series,
    Contour,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WrightValue {
    pub value: f64,
    /// Estimated absolute error. For the asymptotic branch this is the
    /// `O(1/Y)` size of the first neglected correction, not a bound.
    pub abs_error_estimate: f64,
    pub branch: WrightBranch,
}

/// `W(z; ρ, β)` for `z ≤ 0`.
pub fn wright(z: f64, idx: WrightIndex, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    wright_detailed(z, idx, policy).map(|w| w.value)
}

/// Mainardi function `M_ν(x) = W(−x; −ν, 1−ν)`, `x ≥ 0`, `ν ∈ (0, 1)`.
pub fn mainardi(x: f64, nu: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    if !(x >= 0.0) {
        return Err(invalid("x", x, "must be non-negative"));
    }
    wright(-x, WrightIndex::mainardi(nu)?, policy)
}

/// `dM_ν/dx = −W(−x; −ν, 1−2ν)`.
pub fn mainardi_deriv(x: f64, nu: f64, policy: &EvalPolicy) -> Result<f64, SpecFunError> {
    if !(x >= 0.0) {
        return Err(invalid("x", x, "must be non-negative"));
    }
    let idx = WrightIndex::mainardi(nu)?.derivative();
    wright(-x, idx, policy).map(|w| -w)
}

/// Leading-order large-`x` form `a (νx)^q exp(−b (νx)^{1/(1−ν)})` of `M_ν(x)`.
/// Exact at `ν = 1/2`.
pub fn mainardi_asymptotic(x: f64, nu: f64) -> Result<f64, SpecFunError> {
    let p = AsymptoticParams::for_nu(nu)?;
    if !(x >= 0.0) {
        return Err(invalid("x", x, "must be non-negative"));
    }
    let q = (nu - 0.5) / (1.0 - nu);
    let y = nu * x;
    let ln = p.a_nu.ln() + q * y.ln() - p.b_nu * y.powf(1.0 / (1.0 - nu));
    Ok(if q == 0.0 {
        p.a_nu * (-p.b_nu * y.powf(1.0 / (1.0 - nu))).exp()
    } else {
        ln.exp()
    })
}

/// [`wright`] together with the branch taken and an error estimate.
pub fn wright_detailed(z: f64, idx: WrightIndex, policy: &EvalPolicy) -> Result<WrightValue, SpecFunError> {
    if !(z <= 0.0) {
        return Err(invalid("z", z, "must be finite and non-positive"));
    }
    if z.is_infinite() {
        return Ok(WrightValue {
            value: 0.0,
            abs_error_estimate: 0.0,
            branch: WrightBranch::Asymptotic,
        });
    }
    let (rho, beta) = (idx.rho(), idx.beta());
    if z == 0.0 {
        return Ok(WrightValue {
            value: recip_gamma(beta),
            abs_error_estimate: 0.0,
            branch: WrightBranch::Origin,
        });
    }
    let x = -z;
    let nu = -rho;
    let fail = |reason: String| SpecFunError::AccuracyNotAchieved { z, rho, beta, reason };

    match policy.crossover() {
        Crossover::SeriesOnly => {
            let s = series(z, rho, beta, policy.max_terms());
            if !s.converged {
                return Err(fail(format!("series not converged in {} terms", policy.max_terms())));
            }
            let ratio = s.max_term / s.value.abs();
            if !(ratio <= policy.cancellation_limit()) {
                return Err(fail(format!(
                    "series cancellation ratio {ratio:.3e} exceeds limit {:.3e}",
                    policy.cancellation_limit()
                )));
            }
            Ok(WrightValue {
                value: s.value,
                abs_error_estimate: s.abs_error(),
                branch: WrightBranch::Series,
            })
        }
        Crossover::AsymptoticOnly => asymptotic(x, nu, beta, policy).map_err(fail),
        Crossover::Auto => {
            let tol = policy.rel_tol();
            let y = saddle_exponent(x, nu);
            if 2.0 * y <= (tol / TERM_EPS).ln() + 4.0 {
                let s = series(z, rho, beta, policy.max_terms());
                let ratio = s.max_term / s.value.abs();
                if s.converged && ratio <= policy.cancellation_limit() && s.abs_error() <= tol * s.value.abs() {
                    return Ok(WrightValue {
                        value: s.value,
                        abs_error_estimate: s.abs_error(),
                        branch: WrightBranch::Series,
                    });
                }
            }
            contour(x, nu, beta, tol).map_err(fail)
        }
    }
}

/// `Y = (1−ν) ν^{ν/(1−ν)} x^{1/(1−ν)}`; `W(−x; −ν, β)` decays like `e^{−Y}`.
fn saddle_exponent(x: f64, nu: f64) -> f64 {
    (1.0 - nu) * nu.powf(nu / (1.0 - nu)) * x.powf(1.0 / (1.0 - nu))
}

struct SeriesSum {
    value: f64,
    abs_sum: f64,
    max_term: f64,
    converged: bool,
}

impl SeriesSum {
    fn abs_error(&self) -> f64 {
        TERM_EPS * self.abs_sum
    }
}

fn series(z: f64, rho: f64, beta: f64, max_terms: usize) -> SeriesSum {
    let ln_x = (-z).ln();
    let ln_pi = PI.ln();
    let mut sum = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut max_term: f64 = 0.0;
    // a = z^k / k!, tracked directly and as ln|a| for when it under/overflows.
    let mut a = 1.0;
    let mut ln_a = 0.0;
    let mut prev_env = f64::INFINITY;
    let mut small = 0;
    for k in 0..max_terms {
        if k > 0 {
            let kf = k as f64;
            a *= z / kf;
            ln_a += ln_x - kf.ln();
        }
        let sign_a = if k % 2 == 1 { -1.0 } else { 1.0 };
        let y = rho * k as f64 + beta;
        // env bounds |term| independently of how close y is to a pole.
        let (term, env) = if y >= 0.5 {
            let direct = a * recip_gamma(y);
            if a != 0.0 && a.is_finite() && (direct != 0.0 || y > 171.0) {
                (direct, direct.abs())
            } else {
                let (lg, _) = libm::lgamma_r(y);
                let m = (ln_a - lg).exp();
                (sign_a * m, m)
            }
        } else {
            let g = libm::tgamma(1.0 - y);
            let mut env = a.abs() * g / PI;
            if !(env.is_finite() && a != 0.0 && a.is_finite()) {
                let (lg, _) = libm::lgamma_r(1.0 - y);
                env = (ln_a + lg - ln_pi).exp();
            }
            (sign_a * env * sinpi(y), env)
        };
        sum.add(term);
        abs_sum += term.abs();
        max_term = max_term.max(term.abs());
        let s = sum.value().abs();
        if k >= 2 && env < prev_env && (env <= 0.25 * f64::EPSILON * s || env == 0.0) {
            small += 1;
            if small >= 2 {
                return SeriesSum {
                    value: sum.value(),
                    abs_sum,
                    max_term,
                    converged: true,
                };
            }
        } else {
            small = 0;
        }
        prev_env = env;
    }
    SeriesSum {
        value: sum.value(),
        abs_sum,
        max_term,
        converged: false,
    }
}

fn contour(x: f64, nu: f64, beta: f64, rel_tol: f64) -> Result<WrightValue, String> {
    let p = 1.0 / (1.0 - nu);
    let big_x = x.powf(p);
    let y = saddle_exponent(x, nu);
    let g = 1.0 - beta;
    let ln_prefactor = g * big_x.ln() - y - PI.ln();
    // The integral is O(1); this is far below the smallest subnormal.
    if ln_prefactor < -800.0 {
        return Ok(WrightValue {
            value: 0.0,
            abs_error_estimate: 0.0,
            branch: WrightBranch::Contour,
        });
    }

    let integrand = |theta: f64| {
        let (s_nt, c_nt) = (nu * theta).sin_cos();
        let (s_t, c_t) = theta.sin_cos();
        let r = (s_nt / s_t).powf(p);
        let phi = r * c_t - r.powf(nu) * c_nt;
        let e = big_x * phi + y;
        if e < -745.0 {
            return 0.0;
        }
        let h = if g == 0.0 {
            1.0
        } else {
            let dlog_r = (nu * c_nt / s_nt - c_t / s_t) * p;
            let (s_g, c_g) = (g * theta).sin_cos();
            r.powf(g) * (c_g + dlog_r * s_g)
        };
        e.exp() * h
    };

    let w = 1.0 / (y + 1.0).sqrt();
    let mut points = vec![0.0];
    points.extend([w, 3.0 * w].into_iter().filter(|&t| t < 0.9 * PI));
    points.push(PI);
    // The exponent Xφ + Y carries an absolute rounding error of order Y ε.
    let tol = rel_tol.max(CONTOUR_REL_FLOOR).max(8.0 * y * f64::EPSILON);
    let opts = QuadOptions { max_subintervals: 2000 };
    let q = integrate_with(integrand, &points, 0.25 * tol, 1e-300, opts)
        .map_err(|e| format!("contour quadrature failed: {e}"))?;
    let scale = |v: f64| {
        if v == 0.0 {
            0.0
        } else {
            v.signum() * (ln_prefactor + v.abs().ln()).exp()
        }
    };
    let value = scale(q.value);
    if q.abs_error_estimate > tol * q.value.abs() && value != 0.0 {
        return Err(format!(
            "contour quadrature error {:.3e} above tolerance",
            q.abs_error_estimate / q.value.abs()
        ));
    }
    Ok(WrightValue {
        value,
        abs_error_estimate: scale(q.abs_error_estimate),
        branch: WrightBranch::Contour,
    })
}

fn asymptotic(x: f64, nu: f64, beta: f64, policy: &EvalPolicy) -> Result<WrightValue, String> {
    let y = saddle_exponent(x, nu).max(1.0);
    let exact = nu == 0.5;
    let rel_err = if exact { 0.0 } else { 1.0 / y };
    if beta == 1.0 - nu {
        let m = mainardi_asymptotic(x, nu).map_err(|e| e.to_string())?;
        if !m.is_finite() {
            return Err("asymptotic form is singular at this argument".into());
        }
        return Ok(WrightValue {
            value: m,
            abs_error_estimate: rel_err * m,
            branch: WrightBranch::Asymptotic,
        });
    }
    if beta == 1.0 {
        // W(−x; −ν, 1) = ∫_x^∞ M_ν(s) ds
        let f = |s: f64| mainardi_asymptotic(s, nu).unwrap_or(f64::NAN);
        let q = integrate_to_infinity(f, x.max(f64::MIN_POSITIVE), TailBound::None, policy.rel_tol(), 1e-300)
            .map_err(|e| format!("quadrature of the asymptotic form failed: {e}"))?;
        return Ok(WrightValue {
            value: q.value,
            abs_error_estimate: q.abs_error_estimate + rel_err * q.value.abs(),
            branch: WrightBranch::Asymptotic,
        });
    }
    Err(format!("no asymptotic form is available for beta = {beta}"))
}
