//! Real-axis special functions: reciprocal gamma, error functions, the Wright
//! function on the negative axis, the Mainardi function, and discrete
//! fractional operators on sampled data.

mod bounds;
pub(crate) mod compensated;
mod erf;
mod fractional_ops;
mod gamma;
mod wright;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounds::{mainardi_tail_bound, step_response_tail_bound};
pub use compensated::CompensatedSum;
pub use erf::{erf, erfc};
pub use fractional_ops::{caputo_l1, l1_weights, rl_integral};
pub use gamma::{gamma, ln_gamma, recip_gamma, sinpi};
pub use wright::{mainardi, mainardi_asymptotic, mainardi_deriv, wright, wright_detailed, WrightBranch, WrightValue};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecFunError {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// No available evaluation path reaches the requested accuracy. The caller
    /// must relax the tolerance or change the crossover strategy.
    #[error("accuracy not achieved for W({z}; {rho}, {beta}): {reason}")]
    AccuracyNotAchieved {
        z: f64,
        rho: f64,
        beta: f64,
        reason: String,
    },
}

pub fn invalid(name: &'static str, value: f64, reason: &'static str) -> SpecFunError {
    SpecFunError::InvalidParameter { name, value, reason }
}

/// Order `α ∈ (0, 1]` of the time derivative, with `ν = α/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FractionalOrder {
    alpha: f64,
    nu: f64,
}

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self, SpecFunError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(invalid("alpha", alpha, "must lie in (0, 1]"));
        }
        Ok(Self { alpha, nu: alpha / 2.0 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn is_classical(&self) -> bool {
        self.alpha == 1.0
    }
}

/// Parameters `(ρ, β)` of `W(z; ρ, β) = Σ z^k / (k! Γ(ρk + β))`, with `ρ ∈ (-1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WrightIndex {
    rho: f64,
    beta: f64,
}

impl WrightIndex {
    pub fn new(rho: f64, beta: f64) -> Result<Self, SpecFunError> {
        if !(rho > -1.0 && rho < 0.0) {
            return Err(invalid("rho", rho, "must lie in (-1, 0)"));
        }
        if !beta.is_finite() {
            return Err(invalid("beta", beta, "must be finite"));
        }
        Ok(Self { rho, beta })
    }

    /// `(−ν, 1−ν)`: the Mainardi function.
    pub fn mainardi(nu: f64) -> Result<Self, SpecFunError> {
        Self::new(-nu, 1.0 - nu)
    }

    /// `(−ν, 1)`: the step response family.
    pub fn step(nu: f64) -> Result<Self, SpecFunError> {
        Self::new(-nu, 1.0)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Index of `d/dz W(z; ρ, β)`, which is `W(z; ρ, ρ + β)`.
    pub fn derivative(&self) -> Self {
        Self {
            rho: self.rho,
            beta: self.rho + self.beta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Crossover {
    /// Series where it is accurate, steepest-descent contour integral elsewhere.
    #[default]
    Auto,
    SeriesOnly,
    /// Leading-order large-argument form; Mainardi and `β = 1` families only.
    AsymptoticOnly,
}

/// Accuracy controls for Wright-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalPolicy {
    rel_tol: f64,
    max_terms: usize,
    cancellation_limit: f64,
    crossover: Crossover,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 2000,
            cancellation_limit: 1e12,
            crossover: Crossover::Auto,
        }
    }
}

impl EvalPolicy {
    pub fn new(rel_tol: f64, max_terms: usize, cancellation_limit: f64, crossover: Crossover) -> Result<Self, SpecFunError> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(invalid("rel_tol", rel_tol, "must be positive"));
        }
        if max_terms < 1 {
            return Err(invalid("max_terms", max_terms as f64, "must be at least 1"));
        }
        if !(cancellation_limit >= 1.0) {
            return Err(invalid("cancellation_limit", cancellation_limit, "must be at least 1"));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            cancellation_limit,
            crossover,
        })
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self, SpecFunError> {
        Self::new(rel_tol, self.max_terms, self.cancellation_limit, self.crossover)
    }

    pub fn with_crossover(self, crossover: Crossover) -> Self {
        Self { crossover, ..self }
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn cancellation_limit(&self) -> f64 {
        self.cancellation_limit
    }

    pub fn crossover(&self) -> Crossover {
        self.crossover
    }
}

/// Constants of the large-argument Mainardi form
/// `M_ν(r) ≈ a (νr)^q exp(−b (νr)^{1/(1−ν)})`, `q = (ν − 1/2)/(1 − ν)`,
/// and the exponential decay rate of the step response.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticParams {
    pub a_nu: f64,
    pub b_nu: f64,
    pub b_cor4: f64,
}

impl AsymptoticParams {
    pub fn for_nu(nu: f64) -> Result<Self, SpecFunError> {
        if !(nu > 0.0 && nu < 1.0) {
            return Err(invalid("nu", nu, "must lie in (0, 1)"));
        }
        let a_nu = 1.0 / (2.0 * std::f64::consts::PI * (1.0 - nu)).sqrt();
        let b_nu = (1.0 - nu) / nu;
        let b_cor4 = (1.0 - nu) * nu.powf(nu / (1.0 - nu));
        Ok(Self { a_nu, b_nu, b_cor4 })
    }

    pub fn for_order(order: FractionalOrder) -> Self {
        // nu = alpha/2 lies in (0, 1/2]
        Self::for_nu(order.nu()).expect("nu in (0, 1/2]")
    }
}
