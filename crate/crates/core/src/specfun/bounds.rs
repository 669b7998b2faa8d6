//! Explicit majorants for the Mainardi function and the step response,
//! in the offset form consumed by [`integrate_to_infinity`](crate::quadrature::integrate_to_infinity).

use super::{recip_gamma, AsymptoticParams, SpecFunError};
use crate::quadrature::TailBound;

/// Safety factor over the leading-order asymptotic ratio.
const SLACK: f64 = 4.0;

struct Envelope {
    prefactor: f64,
    rate: f64,
    power: f64,
}

/// `M_ν(x) ≤ K exp(−(c/2) x^p)` with `p = 1/(1−ν)` and `c = (1−ν) ν^{ν/(1−ν)}`.
fn mainardi_envelope(nu: f64) -> Result<Envelope, SpecFunError> {
    let params = AsymptoticParams::for_nu(nu)?;
    let p = 1.0 / (1.0 - nu);
    let c = params.b_cor4;
    let half = 0.5 * c;
    let q = (nu - 0.5) / (1.0 - nu);
    // max over x >= 1 of x^q exp(-(c/2) x^p)
    let x_star = if q > 0.0 { (q / (half * p)).powf(1.0 / p).max(1.0) } else { 1.0 };
    let tail = params.a_nu * nu.powf(q) * x_star.powf(q) * (-half * x_star.powf(p)).exp();
    let head = half.exp() * recip_gamma(1.0 - nu);
    Ok(Envelope {
        prefactor: SLACK * head.max(tail),
        rate: half,
        power: p,
    })
}

/// Majorant of `s ↦ M_ν(a + s)` on `s ≥ 0`, for `a ≥ 0`.
pub fn mainardi_tail_bound(nu: f64, a: f64) -> Result<TailBound, SpecFunError> {
    let e = mainardi_envelope(nu)?;
    let a = a.max(0.0);
    // (a + s)^p >= a^p + s^p for p >= 1
    Ok(TailBound::StretchedExponential {
        prefactor: e.prefactor * (-e.rate * a.powf(e.power)).exp(),
        rate: e.rate,
        power: e.power,
    })
}

/// Majorant of `s ↦ W(−(a + s); −ν, 1)` on `s ≥ 0`, for `a ≥ 0`.
pub fn step_response_tail_bound(nu: f64, a: f64) -> Result<TailBound, SpecFunError> {
    let e = mainardi_envelope(nu)?;
    // For x >= 1, x^p >= x, so ∫_x^∞ M <= K e^{-rate x} / rate; for x < 1, W <= 1.
    let k = (e.prefactor / e.rate).max(e.rate.exp());
    let a = a.max(0.0);
    Ok(TailBound::Exponential {
        prefactor: k * (-e.rate * a).exp(),
        rate: e.rate,
    })
}
