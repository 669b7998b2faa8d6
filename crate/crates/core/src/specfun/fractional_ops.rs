//! Discrete fractional calculus on uniformly sampled data.

use super::{gamma, invalid, SpecFunError};

fn check_grid(samples: &[f64], dt: f64) -> Result<(), SpecFunError> {
    if samples.len() < 2 {
        return Err(invalid("samples", samples.len() as f64, "need at least two samples"));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid("dt", dt, "must be positive"));
    }
    Ok(())
}

/// L1 history weights `b_k = (k+1)^{1−α} − k^{1−α}` for `k < n`, `α ∈ (0, 1]`.
pub fn l1_weights(alpha: f64, n: usize) -> Result<Vec<f64>, SpecFunError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(invalid("alpha", alpha, "must lie in (0, 1]"));
    }
    let e = 1.0 - alpha;
    Ok((0..n)
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                // k^e (e^{e ln(1 + 1/k)} - 1) avoids cancellation as alpha -> 1
                let k = k as f64;
                k.powf(e) * (e * (1.0 / k).ln_1p()).exp_m1()
            }
        })
        .collect())
}

/// L1 approximation of the Caputo derivative of order `α ∈ (0, 1)` at every
/// sample time; the first entry is 0.
pub fn caputo_l1(samples: &[f64], alpha: f64, dt: f64) -> Result<Vec<f64>, SpecFunError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid("alpha", alpha, "must lie in (0, 1)"));
    }
    check_grid(samples, dt)?;
    let n = samples.len();
    let b = l1_weights(alpha, n)?;
    let scale = dt.powf(-alpha) / gamma(2.0 - alpha);
    let diffs: Vec<f64> = samples.windows(2).map(|w| w[1] - w[0]).collect();
    let mut out = vec![0.0; n];
    for m in 1..n {
        let s: f64 = (0..m).map(|k| b[k] * diffs[m - k - 1]).sum();
        out[m] = scale * s;
    }
    Ok(out)
}

/// Riemann–Liouville integral of order `γ ∈ (0, 1)` by product-trapezoid
/// quadrature; the first entry is 0.
pub fn rl_integral(samples: &[f64], order: f64, dt: f64) -> Result<Vec<f64>, SpecFunError> {
    if !(order > 0.0 && order < 1.0) {
        return Err(invalid("order", order, "must lie in (0, 1)"));
    }
    check_grid(samples, dt)?;
    let n = samples.len();
    let g1 = order + 1.0;
    let pw: Vec<f64> = (0..n).map(|k| (k as f64).powf(g1)).collect();
    let scale = dt.powf(order) / gamma(order + 2.0);
    let mut out = vec![0.0; n];
    for m in 1..n {
        let mf = m as f64;
        let mut s = ((mf - 1.0).powf(g1) - (mf - g1) * mf.powf(order)) * samples[0];
        for j in 1..m {
            let d = m - j;
            s += (pw[d + 1] - 2.0 * pw[d] + pw[d - 1]) * samples[j];
        }
        s += samples[m];
        out[m] = scale * s;
    }
    Ok(out)
}
