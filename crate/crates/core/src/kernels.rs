//! Half-line Green kernels, the boundary kernel `K` and the step response of
//! `D_t^α c = λ² c_xx`, all expressed through the similarity variable
//! `η = x / (λ t^{α/2})`.

use serde::Serialize;

use crate::specfun::{mainardi, wright, EvalPolicy, FractionalOrder, SpecFunError, WrightIndex};

/// Diffusion coefficient `λ` (units length · time^{−α/2}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diffusivity(f64);

impl Diffusivity {
    pub fn new(lambda: f64) -> Result<Self, SpecFunError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(crate::specfun::invalid("lambda", lambda, "must be positive"));
        }
        Ok(Self(lambda))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A space-time point with its similarity coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityPoint {
    pub x: f64,
    pub t: f64,
    pub eta: f64,
}

/// Equation parameters plus the accuracy policy used for every kernel call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub order: FractionalOrder,
    pub lambda: Diffusivity,
    pub policy: EvalPolicy,
}

fn non_negative(name: &'static str, v: f64) -> Result<f64, SpecFunError> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(crate::specfun::invalid(name, v, "must be finite and non-negative"))
    }
}

fn positive(name: &'static str, v: f64) -> Result<f64, SpecFunError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(crate::specfun::invalid(name, v, "must be finite and positive"))
    }
}

impl Medium {
    pub fn new(order: FractionalOrder, lambda: Diffusivity) -> Self {
        Self {
            order,
            lambda,
            policy: EvalPolicy::default(),
        }
    }

    pub fn with_policy(self, policy: EvalPolicy) -> Self {
        Self { policy, ..self }
    }

    pub fn nu(&self) -> f64 {
        self.order.nu()
    }

    /// Length scale `λ t^{α/2}`.
    pub fn scale(&self, t: f64) -> f64 {
        self.lambda.value() * t.powf(self.order.nu())
    }

    pub fn similarity(&self, x: f64, t: f64) -> Result<SimilarityPoint, SpecFunError> {
        let x = non_negative("x", x)?;
        let t = positive("t", t)?;
        Ok(SimilarityPoint {
            x,
            t,
            eta: x / self.scale(t),
        })
    }

    /// Mainardi profile `M_{α/2}(η)`.
    pub fn profile(&self, eta: f64) -> Result<f64, SpecFunError> {
        mainardi(eta, self.nu(), &self.policy)
    }

    /// `W(−η; −α/2, 1)`.
    pub fn step_profile(&self, eta: f64) -> Result<f64, SpecFunError> {
        wright(-eta, WrightIndex::step(self.nu())?, &self.policy)
    }

    /// `(1/(2λt^{α/2})) [M(|x−ξ|/λt^{α/2}) − M((x+ξ)/λt^{α/2})]`.
    pub fn green_dirichlet(&self, x: f64, xi: f64, t: f64) -> Result<f64, SpecFunError> {
        let (x, xi, t) = (non_negative("x", x)?, non_negative("xi", xi)?, positive("t", t)?);
        if x == 0.0 || xi == 0.0 {
            return Ok(0.0);
        }
        let s = self.scale(t);
        Ok((self.profile((x - xi).abs() / s)? - self.profile((x + xi) / s)?) / (2.0 * s))
    }

    /// `(1/(2λt^{α/2})) [M(|x−ξ|/λt^{α/2}) + M((x+ξ)/λt^{α/2})]`.
    pub fn green_neumann(&self, x: f64, xi: f64, t: f64) -> Result<f64, SpecFunError> {
        let (x, xi, t) = (non_negative("x", x)?, non_negative("xi", xi)?, positive("t", t)?);
        let s = self.scale(t);
        if x == 0.0 || xi == 0.0 {
            return Ok(self.profile((x + xi) / s)? / s);
        }
        Ok((self.profile((x - xi).abs() / s)? + self.profile((x + xi) / s)?) / (2.0 * s))
    }

    /// `K(x, t) = M(η) α x / (2 λ t^{α/2 + 1}) = M(η) α η / (2t)`.
    pub fn boundary_kernel(&self, x: f64, t: f64) -> Result<f64, SpecFunError> {
        let p = self.similarity(positive("x", x)?, t)?;
        Ok(self.profile(p.eta)? * self.order.alpha() * p.eta / (2.0 * p.t))
    }

    /// `v(x, t) = W(−x/(λt^{α/2}); −α/2, 1)`.
    pub fn step_response(&self, x: f64, t: f64) -> Result<f64, SpecFunError> {
        let p = self.similarity(x, t)?;
        self.step_profile(p.eta)
    }
}

fn medium(alpha: f64, lambda: f64) -> Result<Medium, SpecFunError> {
    Ok(Medium::new(FractionalOrder::new(alpha)?, Diffusivity::new(lambda)?))
}

/// [`Medium::green_dirichlet`] with the default policy.
pub fn green_dirichlet(x: f64, xi: f64, t: f64, alpha: f64, lambda: f64) -> Result<f64, SpecFunError> {
    medium(alpha, lambda)?.green_dirichlet(x, xi, t)
}

/// [`Medium::green_neumann`] with the default policy.
pub fn green_neumann(x: f64, xi: f64, t: f64, alpha: f64, lambda: f64) -> Result<f64, SpecFunError> {
    medium(alpha, lambda)?.green_neumann(x, xi, t)
}

/// [`Medium::boundary_kernel`] with the default policy.
pub fn boundary_kernel(x: f64, t: f64, alpha: f64, lambda: f64) -> Result<f64, SpecFunError> {
    medium(alpha, lambda)?.boundary_kernel(x, t)
}

/// [`Medium::step_response`] with the default policy.
pub fn step_response(x: f64, t: f64, alpha: f64, lambda: f64) -> Result<f64, SpecFunError> {
    medium(alpha, lambda)?.step_response(x, t)
}
