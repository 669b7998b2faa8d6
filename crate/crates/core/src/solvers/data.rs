//! Problem data: initial/boundary functions and problem specifications.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernels::Diffusivity;
use crate::specfun::FractionalOrder;

/// An invariant violation, naming the offending field.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("{field}: {reason}")]
pub struct ProblemError {
    pub field: String,
    pub reason: String,
}

impl ProblemError {
    pub fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Prefix the field path, e.g. `points` becomes `f.points`.
    pub fn within(self, parent: &str) -> Self {
        Self {
            field: format!("{parent}.{}", self.field),
            reason: self.reason,
        }
    }
}

/// Initial or boundary datum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Constant { value: f64 },
    /// `Σ coeffs[k] s^k`.
    Polynomial { coeffs: Vec<f64> },
    /// `a e^{−b s}`.
    ExpDecay { a: f64, b: f64 },
    /// Piecewise-linear through `(points[i], values[i])`, constant outside.
    Tabulated { points: Vec<f64>, values: Vec<f64> },
}

impl FunctionSpec {
    pub fn zero() -> Self {
        FunctionSpec::Constant { value: 0.0 }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            FunctionSpec::Constant { value } => *value,
            FunctionSpec::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c),
            FunctionSpec::ExpDecay { a, b } => a * (-b * s).exp(),
            FunctionSpec::Tabulated { points, values } => {
                let n = points.len();
                if s <= points[0] {
                    return values[0];
                }
                if s >= points[n - 1] {
                    return values[n - 1];
                }
                let i = points.partition_point(|&p| p <= s);
                let (x0, x1) = (points[i - 1], points[i]);
                let w = (s - x0) / (x1 - x0);
                values[i - 1] + w * (values[i] - values[i - 1])
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FunctionSpec::Constant { value } => *value == 0.0,
            FunctionSpec::Polynomial { coeffs } => coeffs.iter().all(|&c| c == 0.0),
            FunctionSpec::ExpDecay { a, .. } => *a == 0.0,
            FunctionSpec::Tabulated { values, .. } => values.iter().all(|&v| v == 0.0),
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            FunctionSpec::Constant { value } => Some(*value),
            _ => None,
        }
    }

    /// Points where the function is not smooth.
    pub fn kinks(&self) -> &[f64] {
        match self {
            FunctionSpec::Tabulated { points, .. } => points,
            _ => &[],
        }
    }

    /// Structural checks: finite parameters, matching lengths, increasing abscissae.
    pub fn validate(&self) -> Result<(), ProblemError> {
        let finite = |name: &str, v: &[f64]| {
            v.iter()
                .position(|x| !x.is_finite())
                .map_or(Ok(()), |i| Err(ProblemError::new(format!("{name}[{i}]"), "must be finite")))
        };
        match self {
            FunctionSpec::Constant { value } => finite("value", &[*value]),
            FunctionSpec::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(ProblemError::new("coeffs", "must not be empty"));
                }
                finite("coeffs", coeffs)
            }
            FunctionSpec::ExpDecay { a, b } => {
                finite("a", &[*a])?;
                finite("b", &[*b])
            }
            FunctionSpec::Tabulated { points, values } => {
                if points.is_empty() {
                    return Err(ProblemError::new("points", "must not be empty"));
                }
                if points.len() != values.len() {
                    return Err(ProblemError::new(
                        "values",
                        format!("has {} entries but points has {}", values.len(), points.len()),
                    ));
                }
                finite("points", points)?;
                finite("values", values)?;
                if let Some(i) = points.windows(2).position(|w| !(w[1] > w[0])) {
                    return Err(ProblemError::new("points", format!("must be strictly increasing (entry {})", i + 1)));
                }
                Ok(())
            }
        }
    }

    /// Initial data must be bounded on `[0, ∞)`.
    pub fn check_bounded(&self) -> Result<(), ProblemError> {
        match self {
            FunctionSpec::Polynomial { coeffs } if coeffs.iter().skip(1).any(|&c| c != 0.0) => {
                Err(ProblemError::new("coeffs", "a non-constant polynomial is unbounded on [0, inf)"))
            }
            FunctionSpec::ExpDecay { a, b } if *b < 0.0 && *a != 0.0 => {
                Err(ProblemError::new("b", "must be non-negative for a bounded initial datum"))
            }
            _ => Ok(()),
        }
    }

    /// Upper bound of `|f|` on `[0, hi]` (`hi` may be infinite for bounded data).
    pub fn sup_abs(&self, hi: f64) -> f64 {
        match self {
            FunctionSpec::Constant { value } => value.abs(),
            FunctionSpec::Polynomial { coeffs } => {
                if hi.is_infinite() {
                    return if coeffs.iter().skip(1).all(|&c| c == 0.0) { coeffs[0].abs() } else { f64::INFINITY };
                }
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * hi + c.abs())
            }
            FunctionSpec::ExpDecay { a, b } => {
                if *b >= 0.0 {
                    a.abs()
                } else {
                    a.abs() * (-b * hi).exp()
                }
            }
            FunctionSpec::Tabulated { values, .. } => values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    /// Prescribed boundary value `c(0, t) = g(t)`.
    Dirichlet,
    /// Zero boundary flux.
    NeumannZero,
    /// Prescribed boundary flux `c_x(0, t) = g(t)`.
    Flux,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Dirichlet => "dirichlet",
            ProblemKind::NeumannZero => "neumann_zero",
            ProblemKind::Flux => "flux",
        }
    }
}

/// `D_t^α c = λ² c_xx` on `x > 0, 0 < t ≤ T` with `c(x, 0) = f(x)` and a
/// boundary condition at `x = 0` selected by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub order: FractionalOrder,
    pub lambda: Diffusivity,
    pub horizon: f64,
    pub f: FunctionSpec,
    /// Boundary datum; `None` exactly when `kind` is `NeumannZero`.
    pub g: Option<FunctionSpec>,
}

impl ProblemSpec {
    pub fn new(
        kind: ProblemKind,
        alpha: f64,
        lambda: f64,
        horizon: f64,
        f: FunctionSpec,
        g: Option<FunctionSpec>,
    ) -> Result<Self, ProblemError> {
        let order = FractionalOrder::new(alpha).map_err(|e| ProblemError::new("alpha", e.to_string()))?;
        let lambda = Diffusivity::new(lambda).map_err(|e| ProblemError::new("lambda", e.to_string()))?;
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(ProblemError::new("horizon", "must be positive and finite"));
        }
        f.validate().map_err(|e| e.within("f"))?;
        f.check_bounded().map_err(|e| e.within("f"))?;
        match (kind, &g) {
            (ProblemKind::NeumannZero, Some(_)) => {
                return Err(ProblemError::new("g", "must be absent for a zero-flux problem"));
            }
            (ProblemKind::Dirichlet | ProblemKind::Flux, None) => {
                return Err(ProblemError::new("g", "is required for this problem kind"));
            }
            (_, Some(g)) => g.validate().map_err(|e| e.within("g"))?,
            _ => {}
        }
        Ok(Self {
            kind,
            order,
            lambda,
            horizon,
            f,
            g,
        })
    }

    pub fn dirichlet(alpha: f64, lambda: f64, horizon: f64, f: FunctionSpec, g: FunctionSpec) -> Result<Self, ProblemError> {
        Self::new(ProblemKind::Dirichlet, alpha, lambda, horizon, f, Some(g))
    }

    pub fn neumann_zero(alpha: f64, lambda: f64, horizon: f64, f: FunctionSpec) -> Result<Self, ProblemError> {
        Self::new(ProblemKind::NeumannZero, alpha, lambda, horizon, f, None)
    }

    pub fn flux(alpha: f64, lambda: f64, horizon: f64, f: FunctionSpec, g: FunctionSpec) -> Result<Self, ProblemError> {
        Self::new(ProblemKind::Flux, alpha, lambda, horizon, f, Some(g))
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    /// Same problem at another order.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self, ProblemError> {
        let order = FractionalOrder::new(alpha).map_err(|e| ProblemError::new("alpha", e.to_string()))?;
        Ok(Self { order, ..self.clone() })
    }

    /// Boundary datum, zero when absent.
    pub fn boundary(&self) -> FunctionSpec {
        self.g.clone().unwrap_or_else(FunctionSpec::zero)
    }
}
