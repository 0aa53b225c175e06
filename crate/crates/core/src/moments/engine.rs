use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::moments::hermite::{hermite_rule, MAX_HERMITE_NODES};
use crate::numeric::{gk15, integrate_adaptive, log_sum_exp, pairwise_sum};
use crate::spaces::{NormKind, NormSpec};
use crate::spectral::{
    conditional_field_scaled, ConditionedState, InitialDatum, ModelParams, Order, SpectralField,
    SpectralSymbols,
};

/// How a moment was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    GaussHermite,
    AdaptiveTail,
    MonteCarloCheck,
}

/// `E ||U(t)||^p` together with how it was computed. `value` is `+inf` exactly
/// when the tail test certifies divergence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub value: f64,
    pub method: MomentMethod,
    pub quad_nodes: usize,
    pub error_indicator: f64,
}

impl MomentEstimate {
    fn diverged() -> Self {
        MomentEstimate {
            value: f64::INFINITY,
            method: MomentMethod::GaussHermite,
            quad_nodes: 0,
            error_indicator: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

/// The scalar quantities through which the Gaussian initial datum
/// `exp(-delta c(n)^2)` enters the conditioned solution: with
/// `D = delta + t(1 + 2 theta)`,
/// `|v_n| = exp(-D c^2 + 2 beta |c| w)` and the largest mode is `exp(beta^2 w^2 / D)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianReduction {
    pub t: f64,
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussianReduction {
    pub fn new(t: f64, delta: f64, alpha: f64, beta: f64) -> Self {
        GaussianReduction {
            t,
            delta,
            alpha,
            beta,
        }
    }

    fn theta(&self) -> f64 {
        self.beta * self.beta - self.alpha * self.alpha
    }

    /// `D = t + 2 theta t + delta`; the datum stays summable iff `D > 0`.
    pub fn denominator(&self) -> f64 {
        self.delta + self.t * (1.0 + 2.0 * self.theta())
    }

    pub fn f_tilde(&self) -> f64 {
        2.0 * self.denominator()
    }

    pub fn g_tilde(&self, w: f64) -> f64 {
        self.beta * w / self.denominator()
    }

    pub fn h_tilde(&self, w: f64) -> f64 {
        self.beta * self.beta * w * w / self.denominator()
    }

    /// Coefficient `kappa` of `z^2` in the log of the moment integrand at
    /// `W(t) = sqrt(t) z`: `p beta^2 t / D - 1/2`. `+inf` once `D <= 0`.
    pub fn tail_coefficient(&self, p: f64) -> f64 {
        let d = self.denominator();
        if d <= 0.0 {
            return f64::INFINITY;
        }
        p * self.beta * self.beta * self.t / d - 0.5
    }
}

/// Margin below which Gauss-Hermite is replaced by tail-split quadrature.
pub const CRITICAL_MARGIN: f64 = 1e-3;
/// Margin below which no quadrature is attempted.
pub const NEAR_CRITICAL: f64 = 1e-12;

const REL_TOL: f64 = 1e-8;
const START_NODES: usize = 32;
const HORIZON: f64 = 1e12;

/// A moment computation: model, symbols, initial datum, norm and truncation.
#[derive(Debug, Clone)]
pub struct MomentProblem {
    pub params: ModelParams,
    pub symbols: SpectralSymbols,
    pub initial: InitialDatum,
    pub norm: NormSpec,
    pub truncation: usize,
    field: SpectralField,
}

impl MomentProblem {
    pub fn new(
        params: ModelParams,
        symbols: SpectralSymbols,
        initial: InitialDatum,
        norm: NormSpec,
        truncation: usize,
    ) -> Result<Self> {
        params.validate()?;
        if truncation == 0 {
            return Err(LabError::InvalidParameter("truncation must be positive".into()));
        }
        if let NormKind::SquareFn { .. } = norm.kind {
            return Err(LabError::InvalidParameter(
                "moments are defined for single-time norms; use the path simulator for square functions"
                    .into(),
            ));
        }
        if initial.gaussian_width().is_some() && symbols.coefficients().is_none() {
            return Err(LabError::InvalidParameter(
                "the Gaussian datum's tail test needs structured symbols".into(),
            ));
        }
        let field = initial.to_field(&symbols, truncation)?;
        Ok(MomentProblem {
            params,
            symbols,
            initial,
            norm,
            truncation,
            field,
        })
    }

    /// Second-order symbols taken from `params`.
    pub fn second_order(
        params: ModelParams,
        initial: InitialDatum,
        norm: NormSpec,
        truncation: usize,
    ) -> Result<Self> {
        let symbols = SpectralSymbols::second_order(&params);
        MomentProblem::new(params, symbols, initial, norm, truncation)
    }

    pub fn initial_field(&self) -> &SpectralField {
        &self.field
    }

    fn reduction(&self, t: f64) -> Option<GaussianReduction> {
        let delta = self.initial.gaussian_width()?;
        let (alpha, beta) = self.symbols.coefficients()?;
        Some(GaussianReduction::new(t, delta, alpha, beta))
    }

    /// Tail coefficient `kappa(t)`; `-1/2` for data without a Gaussian tail.
    pub fn tail_coefficient(&self, t: f64) -> f64 {
        match self.reduction(t) {
            Some(r) => r.tail_coefficient(self.params.p),
            None => -0.5,
        }
    }

    /// `ln ||U(t)||` given `W(t) = w`.
    pub fn log_conditional_norm(&self, t: f64, w: f64) -> Result<f64> {
        let state = ConditionedState::new(t, w, &self.symbols, &self.field);
        if let NormKind::Bessel { s, q } = self.norm.kind {
            if q == 2.0 && self.norm.grid_points.is_none() {
                return Ok(self.log_parseval(&state, s));
            }
        }
        let (scaled, log_scale) = conditional_field_scaled(&state);
        if log_scale == f64::NEG_INFINITY {
            return Ok(f64::NEG_INFINITY);
        }
        let v = self.norm.evaluate(&scaled, &self.symbols)?;
        Ok(v.ln() + log_scale)
    }

    fn log_parseval(&self, state: &ConditionedState<'_>, s: f64) -> f64 {
        let terms: Vec<f64> = self
            .field
            .iter()
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .map(|(n, c)| {
                s * (1.0 + (n * n) as f64).ln() + 2.0 * (state.exponent(n).re + c.norm().ln())
            })
            .collect();
        0.5 * ((2.0 * PI).ln() + log_sum_exp(&terms))
    }

    /// `||U(t)||` given `W(t) = w`; overflows to `+inf`.
    pub fn conditional_norm(&self, t: f64, w: f64) -> Result<f64> {
        self.log_conditional_norm(t, w).map(f64::exp)
    }

    /// `ln` of the integrand `||U(t)||^p phi(z)` at `W(t) = sqrt(t) z`.
    fn log_integrand(&self, t: f64, z: f64) -> Result<f64> {
        let ln = self.log_conditional_norm(t, t.sqrt() * z)?;
        Ok(self.params.p * ln - 0.5 * z * z - 0.5 * (2.0 * PI).ln())
    }

    /// `E ||U(t)||^p`, with `W(t) = sqrt(t) Z`.
    pub fn expected_norm_p(&self, t: f64) -> Result<MomentEstimate> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(LabError::InvalidParameter(format!("time must be finite and >= 0, got {t}")));
        }
        let p = self.params.p;
        if t == 0.0 {
            let v = (p * self.log_conditional_norm(0.0, 0.0)?).exp();
            return Ok(MomentEstimate {
                value: v,
                method: MomentMethod::GaussHermite,
                quad_nodes: 1,
                error_indicator: 0.0,
            });
        }
        let kappa = self.tail_coefficient(t);
        if kappa >= 0.0 {
            return Ok(MomentEstimate::diverged());
        }
        if -kappa < NEAR_CRITICAL {
            return Err(LabError::NonConvergence(format!(
                "tail coefficient {kappa:e} is within {NEAR_CRITICAL:e} of the critical value at t = {t}"
            )));
        }
        let estimate = if -kappa < CRITICAL_MARGIN {
            self.adaptive_tail(t, kappa)?
        } else {
            match self.gauss_hermite(t, kappa) {
                Ok(e) => e,
                Err(LabError::NonConvergence(msg)) => {
                    warn!("Gauss-Hermite failed at t = {t} ({msg}); switching to tail-split quadrature");
                    self.adaptive_tail(t, kappa)?
                }
                Err(e) => return Err(e),
            }
        };
        if estimate.value.is_infinite() {
            warn!("moment at t = {t} overflowed the floating range; reported as +inf");
        }
        Ok(estimate)
    }

    /// Largest `|c(n)|` dominating the conditioned field at `W = w`, compared
    /// against the truncation.
    fn check_peak_mode(&self, t: f64, w: f64) -> Result<()> {
        let Some(r) = self.reduction(t) else {
            return Ok(());
        };
        let d = r.denominator();
        let c_star = r.beta.abs() * w.abs() / d + 10.0 / d.sqrt();
        let n = self.truncation as f64;
        let c_max = match self.symbols.order() {
            Some(Order::Fourth) => n * n,
            _ => n,
        };
        if c_star > c_max {
            return Err(LabError::NonConvergence(format!(
                "dominant mode at W = {w:.3} lies beyond the truncation {}; increase it",
                self.truncation
            )));
        }
        Ok(())
    }

    /// Gauss-Hermite in `z = sqrt(2) sigma x`, `sigma = (-2 kappa)^{-1/2}`, so the
    /// rule's weight matches the integrand's Gaussian tail.
    fn gauss_hermite(&self, t: f64, kappa: f64) -> Result<MomentEstimate> {
        let sigma = (-2.0 * kappa).sqrt().recip();
        let log_jac = (2.0f64.sqrt() * sigma).ln();
        let mut n = START_NODES;
        let mut previous: Option<f64> = None;
        while n <= MAX_HERMITE_NODES {
            let rule = hermite_rule(n)?;
            let mut terms = Vec::with_capacity(n);
            for (x, lw) in rule.nodes.iter().zip(&rule.log_weights) {
                let z = 2.0f64.sqrt() * sigma * x;
                terms.push(lw + x * x + log_jac + self.log_integrand(t, z)?);
            }
            let log_value = log_sum_exp(&terms);
            // Every node carrying mass must see its dominant mode inside the truncation.
            for (x, term) in rule.nodes.iter().zip(&terms) {
                if *term > log_value - 40.0 {
                    self.check_peak_mode(t, t.sqrt() * 2.0f64.sqrt() * sigma * x)?;
                }
            }
            if let Some(prev) = previous {
                let change = ((log_value - prev).exp() - 1.0).abs();
                if change < REL_TOL || (log_value == f64::NEG_INFINITY && prev == log_value) {
                    return Ok(MomentEstimate {
                        value: log_value.exp(),
                        method: MomentMethod::GaussHermite,
                        quad_nodes: n,
                        error_indicator: if change.is_nan() { 0.0 } else { change },
                    });
                }
            }
            previous = Some(log_value);
            n *= 2;
        }
        Err(LabError::NonConvergence(format!(
            "Gauss-Hermite did not settle to {REL_TOL:e} within {MAX_HERMITE_NODES} nodes at t = {t}"
        )))
    }

    /// Adaptive quadrature on `[-L, L]` plus a Gaussian bound on the two tails.
    fn adaptive_tail(&self, t: f64, kappa: f64) -> Result<MomentEstimate> {
        let sigma = (-2.0 * kappa).sqrt().recip();
        let mut half_width = sigma * 90f64.sqrt();
        let samples = 400;
        let grid_peak = |l: f64| -> Result<f64> {
            let mut best = f64::NEG_INFINITY;
            for i in 0..=samples {
                let z = -l + 2.0 * l * i as f64 / samples as f64;
                best = best.max(self.log_integrand(t, z)?);
            }
            Ok(best)
        };
        let mut peak = grid_peak(half_width)?;
        for _ in 0..20 {
            let edge = self
                .log_integrand(t, half_width)?
                .max(self.log_integrand(t, -half_width)?);
            if edge < peak - 35.0 {
                break;
            }
            half_width *= 1.5;
            peak = grid_peak(half_width)?;
        }
        if peak == f64::NEG_INFINITY {
            return Ok(MomentEstimate {
                value: 0.0,
                method: MomentMethod::AdaptiveTail,
                quad_nodes: 0,
                error_indicator: 0.0,
            });
        }
        self.check_peak_mode(t, t.sqrt() * half_width)?;

        let failure = std::cell::Cell::new(None);
        let g = |z: f64| match self.log_integrand(t, z) {
            Ok(v) => (v - peak).exp(),
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        };
        // Split at the origin and at the quartiles so narrow peaks are seen.
        let cuts = [-half_width, -0.5 * half_width, 0.0, 0.5 * half_width, half_width];
        let mut parts = Vec::new();
        let mut err = 0.0;
        let mut panels = 0;
        for w in cuts.windows(2) {
            let q = integrate_adaptive(g, w[0], w[1], 0.0, 1e-11, 4000);
            parts.push(q.value);
            err += q.error;
            panels += q.panels;
        }
        if let Some(e) = failure.take() {
            return Err(e);
        }
        let body = pairwise_sum(&parts);
        // Beyond L the integrand is below g(L) e^{kappa (z^2 - L^2)}, whose tail
        // integral is at most g(L) / (2 |kappa| L) per side.
        let tail: f64 = [half_width, -half_width]
            .iter()
            .map(|&l| g(l) / (2.0 * -kappa * half_width))
            .sum();
        let total = body + tail;
        let error_indicator = (err + tail) / total;
        if error_indicator > 1e-6 {
            return Err(LabError::NonConvergence(format!(
                "tail-split quadrature error indicator {error_indicator:e} at t = {t}"
            )));
        }
        Ok(MomentEstimate {
            value: (total.ln() + peak).exp(),
            method: MomentMethod::AdaptiveTail,
            quad_nodes: panels * 15,
            error_indicator,
        })
    }

    /// First time at which the `p`-th moment is infinite, or `+inf`.
    pub fn divergence_time(&self) -> f64 {
        match (self.initial.gaussian_width(), self.symbols.coefficients()) {
            (Some(delta), Some((alpha, beta))) => {
                divergence_time(alpha, beta, self.params.p, delta)
            }
            _ => f64::INFINITY,
        }
    }

    /// `( int_0^T E ||U(t)||^p dt )^{1/p}` on a mesh graded quadratically
    /// towards `t = 0`, with one G7K15 panel per mesh interval.
    pub fn time_integrated_moment(&self, big_t: f64, time_nodes: usize) -> Result<f64> {
        if !(big_t > 0.0 && big_t.is_finite()) {
            return Err(LabError::InvalidParameter(format!("horizon must be positive, got {big_t}")));
        }
        if time_nodes == 0 {
            return Err(LabError::InvalidParameter("need at least one time panel".into()));
        }
        if self.tail_coefficient(big_t) >= 0.0 {
            return Ok(f64::INFINITY);
        }
        let failure = std::cell::Cell::new(None);
        let f = |t: f64| match self.expected_norm_p(t) {
            Ok(e) => e.value,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        };
        let mesh: Vec<f64> = (0..=time_nodes)
            .map(|k| big_t * (k as f64 / time_nodes as f64).powi(2))
            .collect();
        let parts: Vec<f64> = mesh.windows(2).map(|w| gk15(&f, w[0], w[1]).0).collect();
        if let Some(e) = failure.take() {
            return Err(e);
        }
        Ok(pairwise_sum(&parts).powf(1.0 / self.params.p))
    }
}

/// Root in `t` of the tail coefficient `p beta^2 t / (delta + t(1 + 2 theta)) - 1/2`,
/// found by bracketing and bisection; `+inf` if it stays negative up to `1e12`.
pub fn divergence_time(alpha: f64, beta: f64, p: f64, delta: f64) -> f64 {
    let diverged = |t: f64| GaussianReduction::new(t, delta, alpha, beta).tail_coefficient(p) >= 0.0;
    let mut hi = delta.max(1e-12);
    while !diverged(hi) {
        hi *= 2.0;
        if hi > HORIZON {
            return f64::INFINITY;
        }
    }
    let mut lo = 0.0;
    while hi - lo > 4.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if diverged(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
