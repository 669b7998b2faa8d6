/// Majorant of `|f(a + s)|` for `s >= 0`, where `a` is the lower limit of a
/// semi-infinite integral. Used to pick a truncation point with a certified
/// bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound {
    /// `K e^{-rate s}`.
    Exponential { prefactor: f64, rate: f64 },
    /// `K exp(-rate s^power)`, `power >= 1`.
    StretchedExponential { prefactor: f64, rate: f64, power: f64 },
    /// No majorant known; the caller gets a compactifying change of variables.
    None,
}

impl TailBound {
    pub fn prefactor(&self) -> f64 {
        match *self {
            TailBound::Exponential { prefactor, .. } | TailBound::StretchedExponential { prefactor, .. } => prefactor,
            TailBound::None => f64::INFINITY,
        }
    }

    /// Multiply the majorant by a constant factor.
    pub fn scaled(self, factor: f64) -> TailBound {
        let factor = factor.abs();
        match self {
            TailBound::Exponential { prefactor, rate } => TailBound::Exponential {
                prefactor: prefactor * factor,
                rate,
            },
            TailBound::StretchedExponential { prefactor, rate, power } => TailBound::StretchedExponential {
                prefactor: prefactor * factor,
                rate,
                power,
            },
            TailBound::None => TailBound::None,
        }
    }

    /// Absorb a factor `s^degree` by giving up half the decay rate:
    /// `s^n e^{-r s^p} <= (2n / (r p e))^{n/p} e^{-(r/2) s^p}`.
    pub fn with_polynomial_factor(self, degree: u32) -> TailBound {
        if degree == 0 {
            return self;
        }
        let n = degree as f64;
        match self {
            TailBound::Exponential { prefactor, rate } => TailBound::Exponential {
                prefactor: prefactor * (2.0 * n / (rate * std::f64::consts::E)).powf(n),
                rate: 0.5 * rate,
            },
            TailBound::StretchedExponential { prefactor, rate, power } => TailBound::StretchedExponential {
                prefactor: prefactor * (2.0 * n / (rate * power * std::f64::consts::E)).powf(n / power),
                rate: 0.5 * rate,
                power,
            },
            TailBound::None => TailBound::None,
        }
    }

    /// Majorant of `(offset + s) · f(a + s)` given this majorant of `f(a + s)`.
    pub fn with_linear_factor(self, offset: f64) -> TailBound {
        let linear = self.with_polynomial_factor(1);
        match (self, linear) {
            (TailBound::Exponential { prefactor, .. }, TailBound::Exponential { prefactor: p1, rate }) => {
                TailBound::Exponential {
                    prefactor: offset.abs() * prefactor + p1,
                    rate,
                }
            }
            (
                TailBound::StretchedExponential { prefactor, .. },
                TailBound::StretchedExponential { prefactor: p1, rate, power },
            ) => TailBound::StretchedExponential {
                prefactor: offset.abs() * prefactor + p1,
                rate,
                power,
            },
            _ => TailBound::None,
        }
    }

    /// Value of the majorant at offset `s`.
    pub fn majorant(&self, s: f64) -> f64 {
        match *self {
            TailBound::Exponential { prefactor, rate } => prefactor * (-rate * s).exp(),
            TailBound::StretchedExponential { prefactor, rate, power } => prefactor * (-rate * s.powf(power)).exp(),
            TailBound::None => f64::INFINITY,
        }
    }

    /// Upper bound on `∫_s^∞ majorant`.
    pub fn tail_integral(&self, s: f64) -> f64 {
        match *self {
            TailBound::Exponential { prefactor, rate } => prefactor * (-rate * s).exp() / rate,
            TailBound::StretchedExponential { prefactor, rate, power } => {
                // Convexity: t^p >= s^p + p s^{p-1} (t - s) for p >= 1, s > 0.
                let slope = rate * power * s.powf(power - 1.0);
                if s <= 0.0 || slope <= 0.0 {
                    // Crude: compare against the exponential with the same rate past s = 1.
                    return prefactor * (1.0 + (-rate).exp() / rate);
                }
                prefactor * (-rate * s.powf(power)).exp() / slope
            }
            TailBound::None => f64::INFINITY,
        }
    }

    /// Smallest offset (up to bracketing) whose tail bound is `<= target`.
    pub fn cutoff(&self, target: f64) -> f64 {
        match *self {
            TailBound::None => f64::INFINITY,
            _ => {
                if self.tail_integral(0.0) <= target {
                    return 0.0;
                }
                let mut hi = 1.0;
                while self.tail_integral(hi) > target {
                    hi *= 2.0;
                    if hi > 1e300 {
                        return hi;
                    }
                }
                let mut lo = hi * 0.5;
                if self.tail_integral(lo) <= target {
                    lo = 0.0;
                }
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if self.tail_integral(mid) > target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= 1e-9 * hi {
                        break;
                    }
                }
                hi
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_meets_target() {
        let b = TailBound::StretchedExponential {
            prefactor: 3.0,
            rate: 0.4,
            power: 1.6,
        };
        for target in [1e-3, 1e-9, 1e-15, 1e-200] {
            let s = b.cutoff(target);
            assert!(b.tail_integral(s) <= target);
            assert!(b.tail_integral(0.99 * s) > target);
        }
        let e = TailBound::Exponential { prefactor: 2.0, rate: 0.5 };
        let s = e.cutoff(1e-10);
        assert!((e.tail_integral(s) - 1e-10).abs() < 1e-17);
    }

    #[test]
    fn polynomial_factor_stays_a_majorant() {
        let b = TailBound::StretchedExponential {
            prefactor: 1.0,
            rate: 0.7,
            power: 1.3,
        };
        let bp = b.with_polynomial_factor(4);
        for i in 0..400 {
            let s = i as f64 * 0.1;
            assert!(s.powi(4) * b.majorant(s) <= bp.majorant(s) * (1.0 + 1e-12));
        }
        let bl = b.with_linear_factor(2.5);
        for i in 0..400 {
            let s = i as f64 * 0.1;
            assert!((2.5 + s) * b.majorant(s) <= bl.majorant(s) * (1.0 + 1e-12));
        }
    }
}
