//! Adaptive one-dimensional quadrature.
//!
//! Finite intervals are handled by global adaptive bisection driven by a
//! Gauss–Kronrod (7, 15) pair. Semi-infinite intervals are truncated at a
//! point chosen from a user-supplied majorant of the integrand ([`TailBound`]),
//! so the discarded tail carries a certified bound instead of a heuristic one.

mod gauss_kronrod;
mod tail;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::specfun::compensated::CompensatedSum;
use gauss_kronrod::{qk15, NODES};

pub use tail::TailBound;

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    /// The subdivision budget ran out (or intervals shrank to rounding level)
    /// before the requested tolerance was met. Carries the best estimate.
    #[error("tolerance not met: value {} with estimated error {}", .best.value, .best.abs_error_estimate)]
    ToleranceNotMet { best: QuadResult },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid tolerance (rel_tol = {rel_tol}, abs_tol = {abs_tol})")]
    InvalidTolerance { rel_tol: f64, abs_tol: f64 },
}

impl QuadError {
    /// Best available estimate, when the failure is a missed tolerance.
    pub fn best(&self) -> Option<QuadResult> {
        match self {
            QuadError::ToleranceNotMet { best } => Some(*best),
            _ => None,
        }
    }
}

/// Knobs for the adaptive driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub max_subintervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            max_subintervals: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn check_tolerances(rel_tol: f64, abs_tol: f64) -> Result<(), QuadError> {
    let ok = rel_tol.is_finite()
        && abs_tol.is_finite()
        && rel_tol >= 0.0
        && abs_tol >= 0.0
        && (rel_tol > 0.0 || abs_tol > 0.0);
    if ok {
        Ok(())
    } else {
        Err(QuadError::InvalidTolerance { rel_tol, abs_tol })
    }
}

/// Integrate `f` over `[a, b]` to `max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    integrate_with(f, &[a, b], rel_tol, abs_tol, QuadOptions::default())
}

/// Integrate over `points[0]..points[last]`, seeding the subdivision with the
/// given interior breakpoints (kinks, jumps, known features). `points` must be
/// non-decreasing.
pub fn integrate_with<F>(
    f: F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    options: QuadOptions,
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    check_tolerances(rel_tol, abs_tol)?;
    if points.len() < 2 {
        return Err(QuadError::InvalidInterval {
            a: points.first().copied().unwrap_or(f64::NAN),
            b: f64::NAN,
        });
    }
    let (a, b) = (points[0], points[points.len() - 1]);
    if !(a.is_finite() && b.is_finite()) || a > b || points.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(QuadError::InvalidInterval { a, b });
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    let mut total_roundoff = 0.0;
    for w in points.windows(2) {
        if w[0] == w[1] && points.len() > 2 {
            continue;
        }
        let r = qk15(&f, w[0], w[1]);
        evaluations += NODES;
        if let Some(x) = r.non_finite_at {
            return Err(QuadError::NonFinite { x });
        }
        total_value += r.value;
        total_error += r.error;
        total_roundoff += r.roundoff;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: r.value,
            error: r.error,
            roundoff: r.roundoff,
        });
    }

    // Requests below the rounding level of the integrand are capped there.
    let tolerance = |v: f64, roundoff: f64| abs_tol.max(rel_tol * v.abs()).max(2.0 * roundoff);
    let mut exhausted = false;
    while total_error > tolerance(total_value, total_roundoff) {
        if heap.len() >= options.max_subintervals {
            exhausted = true;
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if width <= 64.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            exhausted = true;
            break;
        }
        let left = qk15(&f, worst.a, mid);
        let right = qk15(&f, mid, worst.b);
        evaluations += 2 * NODES;
        if let Some(x) = left.non_finite_at.or(right.non_finite_at) {
            return Err(QuadError::NonFinite { x });
        }
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        total_roundoff += left.roundoff + right.roundoff - worst.roundoff;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: left.value,
            error: left.error,
            roundoff: left.roundoff,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: right.value,
            error: right.error,
            roundoff: right.roundoff,
        });
    }

    // Re-sum from scratch: the running totals drift over many updates.
    let mut value = CompensatedSum::new();
    let mut error = CompensatedSum::new();
    let mut roundoff = 0.0;
    for s in heap.iter() {
        value.add(s.value);
        error.add(s.error);
        roundoff += s.roundoff;
    }
    let result = QuadResult {
        value: value.value(),
        abs_error_estimate: error.value().max(0.0),
        evaluations,
    };
    if exhausted && result.abs_error_estimate > tolerance(result.value, roundoff) {
        Err(QuadError::ToleranceNotMet { best: result })
    } else {
        Ok(result)
    }
}

/// Integrate `f` over `[a, ∞)`.
///
/// With a bound, the interval is cut at the first point where the bound's
/// tail integral drops below half the absolute budget and the finite part is
/// integrated with the rest; the reported error includes the tail bound.
/// With [`TailBound::None`] the map `u = s / (1 + s)`, `s = x - a`, sends the
/// half-line onto `[0, 1)`.
///
/// When `abs_tol` is zero the absolute budget is derived from a first pass at
/// a coarse cutoff.
pub fn integrate_to_infinity<F>(
    f: F,
    a: f64,
    bound: TailBound,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    integrate_to_infinity_with(f, a, &[], bound, rel_tol, abs_tol, QuadOptions::default())
}

/// [`integrate_to_infinity`] with interior breakpoints (points `<= a` are ignored).
pub fn integrate_to_infinity_with<F>(
    f: F,
    a: f64,
    breakpoints: &[f64],
    bound: TailBound,
    rel_tol: f64,
    abs_tol: f64,
    options: QuadOptions,
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    check_tolerances(rel_tol, abs_tol)?;
    if !a.is_finite() {
        return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
    }
    if let TailBound::None = bound {
        let g = |u: f64| {
            if u >= 1.0 {
                return 0.0;
            }
            let s = u / (1.0 - u);
            let v = f(a + s) / ((1.0 - u) * (1.0 - u));
            // Far tail of an integrable f: the product can be 0 * inf.
            if v.is_nan() && s > 1e300 {
                0.0
            } else {
                v
            }
        };
        let mut pts = vec![0.0];
        pts.extend(
            breakpoints
                .iter()
                .filter(|&&p| p > a && p.is_finite())
                .map(|&p| (p - a) / (1.0 + p - a)),
        );
        pts.push(1.0);
        pts.sort_by(f64::total_cmp);
        return integrate_with(g, &pts, rel_tol, abs_tol, options);
    }

    let finite_part = |upper: f64, abs_budget: f64| {
        let mut pts = vec![a];
        pts.extend(breakpoints.iter().copied().filter(|&p| p > a && p < upper));
        pts.push(upper);
        pts.sort_by(f64::total_cmp);
        integrate_with(&f, &pts, rel_tol, abs_budget, options)
    };

    if abs_tol > 0.0 {
        let target = 0.5 * abs_tol;
        let s_max = bound.cutoff(target);
        let tail = bound.tail_integral(s_max);
        let part = finite_part(a + s_max, 0.5 * abs_tol);
        return add_tail(part, tail);
    }

    // Pure relative tolerance: coarse cutoff first, then extend if the tail
    // bound there is not negligible against the value found.
    let coarse_target = bound.prefactor() * 1e-6;
    let s1 = bound.cutoff(coarse_target);
    let first = finite_part(a + s1, 0.0)?;
    let budget = 0.5 * rel_tol * first.value.abs();
    let tail1 = bound.tail_integral(s1);
    if tail1 <= budget || budget == 0.0 && tail1 < f64::MIN_POSITIVE {
        return add_tail(Ok(first), tail1);
    }
    let target = budget.max(f64::MIN_POSITIVE * 1e20);
    let s2 = bound.cutoff(target).max(s1);
    let tail2 = bound.tail_integral(s2);
    let extra = integrate_with(&f, &[a + s1, a + s2], rel_tol, 0.5 * budget.max(f64::MIN_POSITIVE), options);
    let merged = match extra {
        Ok(r) => Ok(first.combine(r)),
        Err(QuadError::ToleranceNotMet { best }) => Err(QuadError::ToleranceNotMet {
            best: first.combine(best),
        }),
        Err(e) => Err(e),
    };
    add_tail(merged, tail2)
}

fn add_tail(part: Result<QuadResult, QuadError>, tail: f64) -> Result<QuadResult, QuadError> {
    match part {
        Ok(mut r) => {
            r.abs_error_estimate += tail;
            Ok(r)
        }
        Err(QuadError::ToleranceNotMet { mut best }) => {
            best.abs_error_estimate += tail;
            Err(QuadError::ToleranceNotMet { best })
        }
        Err(e) => Err(e),
    }
}
