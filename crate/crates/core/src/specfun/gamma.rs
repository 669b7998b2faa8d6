use std::f64::consts::PI;

/// `sin(pi * x)` with the argument reduced exactly, so integers give exact zeros.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // x - 2*round(x/2) is exact in binary floating point.
    let r = x - 2.0 * (0.5 * x).round();
    let (s, v) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    // v in [0, 1]
    let y = if v <= 0.25 {
        (PI * v).sin()
    } else if v <= 0.75 {
        (PI * (0.5 - v)).cos()
    } else {
        (PI * (1.0 - v)).sin()
    };
    s * y
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Reciprocal gamma function `1/Γ(x)`.
///
/// Entire, so it is total on the finite reals: the poles of Γ at
/// `0, -1, -2, ...` map to exact zeros. Large positive arguments underflow to
/// zero; large negative non-integers overflow to `±inf`.
pub fn recip_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x > 171.7 {
            return 0.0;
        }
        return 1.0 / libm::tgamma(x);
    }
    // Reflection: 1/Γ(x) = Γ(1-x) sin(πx) / π
    let g = libm::tgamma(1.0 - x);
    if g.is_finite() {
        g * sinpi(x) / PI
    } else {
        let (lg, _) = libm::lgamma_r(1.0 - x);
        let s = sinpi(x);
        s.signum() * (lg + s.abs().ln() - PI.ln()).exp()
    }
}

/// Gamma function.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    libm::tgamma(x)
}

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma(x: f64) -> (f64, f64) {
    let (v, s) = libm::lgamma_r(x);
    (v, if s < 0 { -1.0 } else { 1.0 })
}
