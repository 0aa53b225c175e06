use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::numeric::pairwise_sum;
use crate::paths::brownian::BrownianPath;
use crate::paths::scheme::{simulate_path, SchemeKind};
use crate::spaces::sobolev_norm_sq;
use crate::spectral::{SpectralField, SpectralSymbols};

/// Adapted integrands `phi(t)` with values in `L^2(T)`.
#[derive(Debug, Clone)]
pub enum Integrand {
    /// `phi(t) = 0`.
    Zero,
    /// `phi(t) = f`.
    Constant(SpectralField),
    /// `phi(t) = W(t) f`.
    BrownianTimes(SpectralField),
    /// `phi(t) = 2 B U(t)` with `U` the exact solution from `initial`.
    NoiseOfSolution {
        symbols: SpectralSymbols,
        initial: SpectralField,
    },
}

/// `lhs = E || sum phi(t_k) dW_k ||^2` and `rhs = E sum ||phi(t_k)||^2 dt_k`,
/// both in `L^2(T)`, with the ratio and its delta-method standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// Standard error of `ratio`; zero when both sides vanish.
    pub sigma: f64,
    pub paths: usize,
}

impl IsometryCheck {
    /// `|ratio - 1| <= k sigma`, or both sides zero.
    pub fn within(&self, k: f64) -> bool {
        if self.lhs == 0.0 && self.rhs == 0.0 {
            return true;
        }
        (self.ratio - 1.0).abs() <= k * self.sigma
    }
}

/// Monte Carlo check of the Itô isometry for a left-point stochastic integral
/// on `steps` uniform steps of `[0, horizon]`.
pub fn ito_isometry_check(
    integrand: &Integrand,
    horizon: f64,
    steps: usize,
    paths: usize,
    seed: u64,
) -> Result<IsometryCheck> {
    if paths < 2 {
        return Err(LabError::InvalidParameter("need at least two paths".into()));
    }
    let pairs = (0..paths as u64)
        .into_par_iter()
        .map(|i| {
            let path = BrownianPath::uniform(horizon, steps, seed, i)?;
            one_path(integrand, &path)
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let n = paths as f64;
    let l: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let r: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let lhs = pairwise_sum(&l) / n;
    let rhs = pairwise_sum(&r) / n;
    if lhs == 0.0 && rhs == 0.0 {
        return Ok(IsometryCheck {
            lhs,
            rhs,
            ratio: 1.0,
            sigma: 0.0,
            paths,
        });
    }
    let ratio = lhs / rhs;
    let resid: Vec<f64> = pairs
        .iter()
        .map(|(a, b)| (a - ratio * b).powi(2))
        .collect();
    let var = pairwise_sum(&resid) / (n - 1.0);
    let sigma = (var / n).sqrt() / rhs;
    Ok(IsometryCheck {
        lhs,
        rhs,
        ratio,
        sigma,
        paths,
    })
}

fn one_path(integrand: &Integrand, path: &BrownianPath) -> Result<(f64, f64)> {
    let dws = path.increments();
    let times = path.times();
    match integrand {
        Integrand::Zero => Ok((0.0, 0.0)),
        Integrand::Constant(f) => {
            let nf = sobolev_norm_sq(f, 0.0);
            let w = path.final_value();
            Ok((nf * w * w, nf * path.horizon()))
        }
        Integrand::BrownianTimes(f) => {
            let nf = sobolev_norm_sq(f, 0.0);
            let ws = path.values();
            let mut stoch = Vec::with_capacity(dws.len());
            let mut quad = Vec::with_capacity(dws.len());
            for k in 0..dws.len() {
                stoch.push(ws[k] * dws[k]);
                quad.push(ws[k] * ws[k] * (times[k + 1] - times[k]));
            }
            let s = pairwise_sum(&stoch);
            Ok((nf * s * s, nf * pairwise_sum(&quad)))
        }
        Integrand::NoiseOfSolution { symbols, initial } => {
            let sol = simulate_path(path, SchemeKind::ExactExponential, symbols, initial)?;
            let mut integral = SpectralField::zeros(initial.truncation());
            let mut quad = Vec::with_capacity(dws.len());
            for k in 0..dws.len() {
                let phi = sol.fields()[k].map(|n, v| 2.0 * symbols.b(n) * v);
                quad.push(sobolev_norm_sq(&phi, 0.0) * (times[k + 1] - times[k]));
                integral = integral.add(&phi.scale(dws[k].into()))?;
            }
            Ok((sobolev_norm_sq(&integral, 0.0), pairwise_sum(&quad)))
        }
    }
}
