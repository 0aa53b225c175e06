use num_complex::Complex64;

use crate::error::Result;
use crate::spectral::{SpectralField, SpectralSymbols};

/// Time `t` and Brownian value `w = W(t)`; given these every mode is a
/// deterministic function of the initial datum.
#[derive(Debug, Clone, Copy)]
pub struct ConditionedState<'a> {
    pub t: f64,
    pub w: f64,
    pub symbols: &'a SpectralSymbols,
    pub initial: &'a SpectralField,
}

impl<'a> ConditionedState<'a> {
    pub fn new(t: f64, w: f64, symbols: &'a SpectralSymbols, initial: &'a SpectralField) -> Self {
        ConditionedState {
            t,
            w,
            symbols,
            initial,
        }
    }

    /// Complex exponent `-t a(n) - 2 t b(n)^2 + 2 b(n) w` of mode `n`.
    pub fn exponent(&self, n: i64) -> Complex64 {
        let a = self.symbols.a(n);
        let b = self.symbols.b(n);
        -self.t * a - 2.0 * self.t * b * b + 2.0 * b * self.w
    }
}

/// `v_n(t) = exp(-t a(n) - 2 t b(n)^2) exp(2 b(n) w) u0(n)`.
pub fn mode_solution(state: &ConditionedState<'_>, n: i64) -> Result<Complex64> {
    let c = state.initial.get(n)?;
    if c == Complex64::new(0.0, 0.0) {
        return Ok(c);
    }
    Ok(state.exponent(n).exp() * c)
}

/// All modes `|n| <= N` of the solution at `(t, W(t) = w)`.
pub fn conditional_field(state: &ConditionedState<'_>) -> SpectralField {
    state.initial.map(|n, c| {
        if c == Complex64::new(0.0, 0.0) {
            c
        } else {
            state.exponent(n).exp() * c
        }
    })
}

/// The conditional field divided by `exp(log_scale)`, where `log_scale` is the
/// largest log-modulus over the modes. Lets norms be evaluated when the raw
/// coefficients would overflow. Returns `(scaled, log_scale)`; a zero field
/// has `log_scale = -inf`.
pub fn conditional_field_scaled(state: &ConditionedState<'_>) -> (SpectralField, f64) {
    let logs: Vec<Option<Complex64>> = state
        .initial
        .iter()
        .map(|(n, c)| (c != Complex64::new(0.0, 0.0)).then(|| state.exponent(n) + c.ln()))
        .collect();
    let log_scale = logs
        .iter()
        .flatten()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if log_scale == f64::NEG_INFINITY {
        return (SpectralField::zeros(state.initial.truncation()), log_scale);
    }
    let mut it = logs.into_iter();
    let scaled = state.initial.map(|_, _| match it.next().flatten() {
        Some(z) => (z - log_scale).exp(),
        None => Complex64::new(0.0, 0.0),
    });
    (scaled, log_scale)
}
