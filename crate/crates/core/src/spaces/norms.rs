use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::numeric::pairwise_sum;
use crate::spaces::grid::{check_grid, GridFunction};
use crate::spectral::SpectralField;

fn check_q(q: f64, allow_infinite: bool) -> Result<()> {
    let ok = (q > 1.0 && q.is_finite()) || (allow_infinite && q == f64::INFINITY);
    if ok {
        Ok(())
    } else {
        Err(LabError::InvalidParameter(format!("q must lie in (1, inf), got {q}")))
    }
}

/// Bessel potential weight `(1 + k^2)^{s/2}` applied to every coefficient.
pub fn bessel_weighted(field: &SpectralField, s: f64) -> SpectralField {
    field.map(|k, c| c * (1.0 + (k * k) as f64).powf(0.5 * s))
}

/// `||f||_{H^{s,q}} = || sum_k (1+k^2)^{s/2} f(k) e^{ikx} ||_{L^q(T)}`.
pub fn bessel_norm(field: &SpectralField, s: f64, q: f64, grid_points: usize) -> Result<f64> {
    check_q(q, false)?;
    check_grid(field.truncation(), q, grid_points)?;
    Ok(GridFunction::from_field(&bessel_weighted(field, s), grid_points)?.lq_norm(q))
}

/// Exact `||f||^2_{H^{s,2}} = 2 pi sum_k (1+k^2)^s |f(k)|^2` by Parseval.
pub fn sobolev_norm_sq(field: &SpectralField, s: f64) -> f64 {
    let terms: Vec<f64> = field
        .iter()
        .map(|(k, c)| (1.0 + (k * k) as f64).powf(s) * c.norm_sqr())
        .collect();
    2.0 * PI * pairwise_sum(&terms)
}

/// Dyadic block index of mode `k`: block 0 is `{0}`, block `j >= 1` is
/// `{k : 2^{j-1} <= |k| < 2^j}`.
pub fn dyadic_block(k: i64) -> u32 {
    if k == 0 {
        0
    } else {
        64 - k.unsigned_abs().leading_zeros()
    }
}

/// The part of `field` supported in dyadic block `j`.
pub fn block_part(field: &SpectralField, j: u32) -> SpectralField {
    field.map(|k, c| {
        if dyadic_block(k) == j {
            c
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `||f||_{B^s_{q,p}} = ( sum_j || 2^{sj} block_j f ||_{L^q}^p )^{1/p}`, with
/// the maximum over blocks for `p = inf` and the grid maximum for `q = inf`.
pub fn besov_norm(field: &SpectralField, s: f64, q: f64, p: f64, grid_points: usize) -> Result<f64> {
    check_q(q, true)?;
    if !(p >= 1.0) {
        return Err(LabError::InvalidParameter(format!("Besov p must lie in [1, inf], got {p}")));
    }
    check_grid(field.truncation(), q, grid_points)?;
    let top = dyadic_block(field.truncation() as i64);
    let mut blocks = Vec::with_capacity(top as usize + 1);
    for j in 0..=top {
        let part = block_part(field, j);
        let lq = GridFunction::from_field(&part, grid_points)?.lq_norm(q);
        blocks.push(2f64.powf(s * j as f64) * lq);
    }
    Ok(combine_lp(&blocks, p))
}

fn combine_lp(xs: &[f64], p: f64) -> f64 {
    let max = xs.iter().copied().fold(0.0, f64::max);
    if p.is_infinite() || max == 0.0 {
        return max;
    }
    let powered: Vec<f64> = xs.iter().map(|x| (x / max).powf(p)).collect();
    max * pairwise_sum(&powered).powf(1.0 / p)
}
