use std::f64::consts::PI;

use crate::error::{LabError, Result};
use crate::numeric::{integrate_composite, log_sum_exp};
use crate::spectral::{SpectralField, SpectralSymbols};

/// The two parts of the real-interpolation norm
/// `||x|| + ( int_0^1 || t^{1-theta} A e^{-tA} x ||^p dt/t )^{1/p}`
/// with base space `H^{s,2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpNorm {
    pub base: f64,
    pub integral: f64,
}

impl InterpNorm {
    pub fn value(&self) -> f64 {
        self.base + self.integral
    }
}

const REFINE_TOL: f64 = 1e-6;

/// `D_A(theta, p)` norm of `field` relative to the semigroup generated by the
/// drift symbol `a(n)`, with `X = H^{s,2}` evaluated by Parseval. The time
/// integral is computed in `u = ln t` with composite Gauss-Kronrod panels and
/// checked against a run with twice as many panels.
pub fn interp_da_norm(
    field: &SpectralField,
    theta: f64,
    p: f64,
    s: f64,
    symbols: &SpectralSymbols,
    time_quad_nodes: usize,
) -> Result<InterpNorm> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(LabError::InvalidParameter(format!("theta must lie in (0, 1), got {theta}")));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(LabError::InvalidParameter(format!("p must lie in [1, inf), got {p}")));
    }
    if time_quad_nodes < 16 {
        return Err(LabError::InvalidParameter(format!(
            "at least 16 time quadrature nodes required, got {time_quad_nodes}"
        )));
    }

    // Per-mode weights w_n = 2 pi (1+n^2)^s |f_n|^2 and eigenvalues a_n.
    let mut log_w = Vec::new();
    let mut rates = Vec::new();
    let mut base_terms = Vec::new();
    for (n, c) in field.iter() {
        let m2 = c.norm_sqr();
        if m2 == 0.0 {
            continue;
        }
        let lw = (2.0 * PI).ln() + s * (1.0 + (n * n) as f64).ln() + m2.ln();
        base_terms.push(lw);
        let a = symbols.a(n);
        if a > 0.0 {
            log_w.push(lw + 2.0 * a.ln());
            rates.push(a);
        }
    }
    let base = (0.5 * log_sum_exp(&base_terms)).exp();
    if rates.is_empty() {
        return Ok(InterpNorm { base, integral: 0.0 });
    }

    let decay = (1.0 - theta) * p;
    let a_max = rates.iter().copied().fold(0.0, f64::max);
    // Below u_min every mode's contribution is past its peak by a factor e^{-40}.
    let u_min = (1.0 - theta).ln() - a_max.ln() - 40.0 / decay;
    let log_integrand = |u: f64| -> f64 {
        let t = u.exp();
        let terms: Vec<f64> = log_w
            .iter()
            .zip(&rates)
            .map(|(lw, a)| lw - 2.0 * t * a)
            .collect();
        decay * u + 0.5 * p * log_sum_exp(&terms)
    };
    // Normalise by the peak to keep the integrand O(1).
    let samples = 512;
    let peak = (0..=samples)
        .map(|i| log_integrand(u_min * (1.0 - i as f64 / samples as f64)))
        .fold(f64::NEG_INFINITY, f64::max);
    let g = |u: f64| (log_integrand(u) - peak).exp();

    let width = -u_min;
    let panels = time_quad_nodes.max((width * (p * (1.0 - theta)).sqrt() * 2.0).ceil() as usize);
    let coarse = integrate_composite(g, u_min, 0.0, panels);
    let fine = integrate_composite(g, u_min, 0.0, 2 * panels);
    let change = (fine - coarse).abs() / fine.abs().max(f64::MIN_POSITIVE);
    if change > REFINE_TOL {
        return Err(LabError::NonConvergence(format!(
            "interpolation-norm time integral changed by {change:e} on refinement"
        )));
    }
    let integral = ((fine.ln() + peak) / p).exp();
    Ok(InterpNorm { base, integral })
}
