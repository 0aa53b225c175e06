use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::moments::gaussian_exp_moment;

/// Noise coefficients `alpha`, `beta` of `B = alpha D + beta |D|`, the moment
/// exponent `p`, the spatial exponent `q` and the smoothness index `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub q: f64,
    pub s: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, p: f64, q: f64, s: f64) -> Result<Self> {
        let params = ModelParams {
            alpha,
            beta,
            p,
            q,
            s,
        };
        params.validate()?;
        Ok(params)
    }

    /// Parameters with `q = 2` and `s = 0`.
    pub fn hilbert(alpha: f64, beta: f64, p: f64) -> Result<Self> {
        Self::new(alpha, beta, p, 2.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("p", self.p),
            ("q", self.q),
            ("s", self.s),
        ] {
            if !v.is_finite() {
                return Err(LabError::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        if self.p <= 1.0 {
            return Err(LabError::InvalidParameter(format!("p must exceed 1, got {}", self.p)));
        }
        if self.q <= 1.0 {
            return Err(LabError::InvalidParameter(format!("q must exceed 1, got {}", self.q)));
        }
        Ok(())
    }

    pub fn with_p(self, p: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, p, self.q, self.s)
    }

    pub fn with_s(self, s: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.p, self.q, s)
    }

    /// `theta = beta^2 - alpha^2`.
    pub fn theta(&self) -> f64 {
        self.beta * self.beta - self.alpha * self.alpha
    }

    /// Left-hand side `2 alpha^2 + 2 beta^2 (p - 1)` of the sharp condition.
    pub fn lp_lhs(&self) -> f64 {
        2.0 * self.alpha * self.alpha + 2.0 * self.beta * self.beta * (self.p - 1.0)
    }
}

/// Outcome of a strict inequality `lhs < 1`, with `margin = 1 - lhs`.
/// A zero margin counts as a failure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub holds: bool,
    pub margin: f64,
}

impl Condition {
    fn from_lhs(lhs: f64) -> Self {
        let margin = 1.0 - lhs;
        Condition {
            holds: margin > 0.0,
            margin,
        }
    }
}

/// The classical condition `2 alpha^2 + 2 beta^2 < 1`.
pub fn classical_condition(params: &ModelParams) -> Condition {
    Condition::from_lhs(2.0 * params.alpha * params.alpha + 2.0 * params.beta * params.beta)
}

/// The p-dependent condition `2 alpha^2 + 2 beta^2 (p - 1) < 1`.
pub fn lp_condition(params: &ModelParams) -> Condition {
    Condition::from_lhs(params.lp_lhs())
}

/// The sharp condition split into its parabolicity and integrability parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitConditions {
    /// `2 alpha^2 - 2 beta^2 < 1`.
    pub parabolicity: bool,
    /// `E exp(c W(1)^2) < inf` with `c = beta^2 p / (1 + 2 beta^2 - 2 alpha^2)`;
    /// `None` when `1 + 2 beta^2 - 2 alpha^2 <= 0` and the exponent is undefined.
    pub integrability: Option<bool>,
}

impl SplitConditions {
    pub fn both(&self) -> bool {
        self.parabolicity && self.integrability == Some(true)
    }
}

/// Integrability part alone; rejects parameters where `1 + 2 beta^2 - 2 alpha^2 <= 0`.
pub fn integrability_condition(params: &ModelParams) -> Result<bool> {
    let denom = 1.0 + 2.0 * params.beta * params.beta - 2.0 * params.alpha * params.alpha;
    if denom <= 0.0 {
        return Err(LabError::InvalidParameter(format!(
            "integrability exponent undefined: 1 + 2beta^2 - 2alpha^2 = {denom} <= 0"
        )));
    }
    let c = params.beta * params.beta * params.p / denom;
    Ok(gaussian_exp_moment(c).is_finite())
}

pub fn split_conditions(params: &ModelParams) -> SplitConditions {
    let parabolicity = 2.0 * params.alpha * params.alpha - 2.0 * params.beta * params.beta < 1.0;
    SplitConditions {
        parabolicity,
        integrability: integrability_condition(params).ok(),
    }
}

/// Nonrandom explosion time `delta / (2 alpha^2 + 2 beta^2 (p-1) - 1)` for the
/// initial datum with coefficients `exp(-delta a(n))`; infinite when the
/// denominator is not positive.
pub fn blow_up_time(params: &ModelParams, delta: f64) -> f64 {
    let denom = params.lp_lhs() - 1.0;
    if denom > 0.0 {
        delta / denom
    } else {
        f64::INFINITY
    }
}
