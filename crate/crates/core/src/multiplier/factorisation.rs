use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::multiplier::seq::MultiplierSeq;
use crate::spectral::ModelParams;

/// The multipliers used to bound the conditioned solution in `L^q`. For
/// `t > 0`, `W(t) = w` and `eps` in `(0, 1/2)` with
/// `2 alpha^2 + 2 beta^2 (p-1) < 1 - 2 eps`, and with `rho = 1 - eps`:
///
/// * `f = 2 (rho + 2 theta) t`, `g = beta w / ((rho + 2 theta) t)`, `h = beta^2 w^2 / ((rho + 2 theta) t)`
/// * `m1_n = exp(-f (|n| - g)^2 / 2)`
/// * `m2_n = exp(k_n)`, `k_n = -eps n^2 t / 2 - 4 i beta alpha t n |n|`
/// * `m3_n = exp(-f (n - r)^2 / 2)` with `r = g - floor(g)`
///
/// so that `v_n = e^h m1_n m2_n e^{-eps n^2 t / 2} e^{2 i alpha n w} u0(n)`.
#[derive(Debug, Clone)]
pub struct FactorisedMultipliers {
    pub m1: MultiplierSeq,
    pub m2: MultiplierSeq,
    pub m3: MultiplierSeq,
    /// `g`, the centre of `m1`.
    pub shift: f64,
    /// `floor(g)`.
    pub floor_shift: i64,
    /// `r = g - floor(g)` in `[0, 1)`.
    pub fractional_shift: f64,
    pub f: f64,
    pub h: f64,
    pub t: f64,
    pub w: f64,
    pub eps: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl FactorisedMultipliers {
    pub fn heat_factor(&self, n: i64) -> f64 {
        (-0.5 * self.eps * (n * n) as f64 * self.t).exp()
    }

    pub fn modulation(&self, n: i64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * self.alpha * n as f64 * self.w)
    }

    /// `e^h m1_n m2_n e^{-eps n^2 t/2} e^{2 i alpha n w} a`.
    pub fn reconstruct(&self, n: i64, a: Complex64) -> Complex64 {
        // Combine the real exponents before exponentiating so large `h` does not overflow.
        let f = self.f;
        let m1_log = -0.5 * f * (n.abs() as f64 - self.shift).powi(2);
        let heat_log = -0.5 * self.eps * (n * n) as f64 * self.t;
        let real = self.h + m1_log + heat_log;
        real.exp() * self.m2.eval(n) * self.modulation(n) * a
    }
}

/// Builds the factorisation at `(t, w)`; rejects `eps` outside the admissible range.
pub fn factorised_multipliers(t: f64, w: f64, params: &ModelParams, eps: f64) -> Result<FactorisedMultipliers> {
    if !(t > 0.0 && t.is_finite() && w.is_finite()) {
        return Err(LabError::InvalidParameter(format!("need t > 0 and finite w, got t = {t}, w = {w}")));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(LabError::InvalidParameter(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    if params.lp_lhs() >= 1.0 - 2.0 * eps {
        return Err(LabError::InvalidParameter(format!(
            "eps = {eps} is inadmissible: 2 alpha^2 + 2 beta^2 (p-1) = {} >= 1 - 2 eps",
            params.lp_lhs()
        )));
    }
    let (alpha, beta) = (params.alpha, params.beta);
    let rho = 1.0 - eps;
    let denom = (rho + 2.0 * params.theta()) * t;
    let f = 2.0 * denom;
    let g = beta * w / denom;
    let h = beta * beta * w * w / denom;
    let g0 = g.floor();
    let r = g - g0;

    let m1 = MultiplierSeq::from_fn(format!("exp(-f(|n|-g)^2/2), f={f:.6}, g={g:.6}"), move |n| {
        Complex64::new((-0.5 * f * (n.abs() as f64 - g).powi(2)).exp(), 0.0)
    });
    let m2 = zeta_symbol(t, alpha, beta, eps, PhaseConvention::Exact);
    let m3 = gaussian_bump(f, r);
    Ok(FactorisedMultipliers {
        m1,
        m2,
        m3,
        shift: g,
        floor_shift: g0 as i64,
        fractional_shift: r,
        f,
        h,
        t,
        w,
        eps,
        alpha,
        beta,
    })
}

/// The smooth symbol `exp(-f (xi - r)^2 / 2)`, of which `m3` is the case `r = g - floor(g)`.
pub fn gaussian_bump(f: f64, r: f64) -> MultiplierSeq {
    MultiplierSeq::smooth(
        format!("exp(-f(n-r)^2/2), f={f:.6}, r={r:.6}"),
        move |x| Complex64::new((-0.5 * f * (x - r).powi(2)).exp(), 0.0),
        move |x| Complex64::new(-f * (x - r) * (-0.5 * f * (x - r).powi(2)).exp(), 0.0),
    )
}

/// Phase of the oscillatory multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseConvention {
    /// `-4 beta alpha t xi |xi|`, the phase of `exp(-2 t b(n)^2)`.
    Exact,
    /// `+4 beta alpha t xi^2`, even in `xi`.
    Even,
}

/// `zeta(xi) = exp(-eps xi^2 t / 2 + i phase(xi))`, whose modulus of derivative
/// is `C eps |xi| t exp(-eps xi^2 t / 2)` with `C = (1 + 64 beta^2 alpha^2 / eps^2)^{1/2}`
/// for both phase conventions.
pub fn zeta_symbol(t: f64, alpha: f64, beta: f64, eps: f64, phase: PhaseConvention) -> MultiplierSeq {
    let c = 4.0 * beta * alpha * t;
    let (sign, label) = match phase {
        PhaseConvention::Exact => (-1.0, "xi|xi|"),
        PhaseConvention::Even => (1.0, "xi^2"),
    };
    let phase_of = move |x: f64| match phase {
        PhaseConvention::Exact => sign * c * x * x.abs(),
        PhaseConvention::Even => sign * c * x * x,
    };
    let phase_slope = move |x: f64| match phase {
        PhaseConvention::Exact => sign * 2.0 * c * x.abs(),
        PhaseConvention::Even => sign * 2.0 * c * x,
    };
    let value = move |x: f64| Complex64::from_polar((-0.5 * eps * x * x * t).exp(), phase_of(x));
    MultiplierSeq::smooth(
        format!("exp(-eps xi^2 t/2 + i phase({label})), eps={eps}, t={t}"),
        value,
        move |x| value(x) * Complex64::new(-eps * x * t, phase_slope(x)),
    )
}

/// The per-level bound `C = (1 + 64 beta^2 alpha^2 / eps^2)^{1/2}`.
pub fn zeta_level_bound(alpha: f64, beta: f64, eps: f64) -> f64 {
    (1.0 + 64.0 * beta * beta * alpha * alpha / (eps * eps)).sqrt()
}
