use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{LabError, Result};
use crate::numeric::pairwise_sum;
use crate::spectral::SpectralField;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Samples `u(x_j)`, `x_j = 2 pi j / M`, of a trigonometric polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<Complex64>,
}

impl GridFunction {
    /// Synthesises `sum_n f(n) e^{i n x_j}` on `points` nodes; needs `points >= 2N + 1`.
    pub fn from_field(field: &SpectralField, points: usize) -> Result<Self> {
        let n = field.truncation();
        if points < 2 * n + 1 {
            return Err(LabError::GridTooCoarse {
                got: points,
                floor: 2 * n + 1,
                truncation: n,
            });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); points];
        for (k, c) in field.iter() {
            buf[k.rem_euclid(points as i64) as usize] = c;
        }
        PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(points).process(&mut buf));
        Ok(GridFunction { values: buf })
    }

    pub fn from_values(values: Vec<Complex64>) -> Self {
        GridFunction { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fourier coefficients `|n| <= truncation` recovered by the forward transform.
    pub fn to_field(&self, truncation: usize) -> Result<SpectralField> {
        let m = self.values.len();
        if m < 2 * truncation + 1 {
            return Err(LabError::GridTooCoarse {
                got: m,
                floor: 2 * truncation + 1,
                truncation,
            });
        }
        let mut buf = self.values.clone();
        PLANNER.with(|p| p.borrow_mut().plan_fft_forward(m).process(&mut buf));
        let inv = 1.0 / m as f64;
        Ok(SpectralField::from_fn(truncation, |k| {
            buf[k.rem_euclid(m as i64) as usize] * inv
        }))
    }

    /// `L^q(T)` norm by the periodic trapezoid rule, `(2 pi mean |u|^q)^{1/q}`.
    /// `q = inf` returns the grid maximum.
    pub fn lq_norm(&self, q: f64) -> f64 {
        lq_norm_of_moduli(&self.values.iter().map(|v| v.norm()).collect::<Vec<_>>(), q)
    }
}

/// `(2 pi mean r^q)^{1/q}` of non-negative samples `r_j`.
pub(crate) fn lq_norm_of_moduli(moduli: &[f64], q: f64) -> f64 {
    let max = moduli.iter().copied().fold(0.0, f64::max);
    if q.is_infinite() || max == 0.0 || !max.is_finite() {
        return max;
    }
    let powered: Vec<f64> = moduli.iter().map(|r| (r / max).powf(q)).collect();
    let mean = pairwise_sum(&powered) / moduli.len() as f64;
    max * (2.0 * PI * mean).powf(1.0 / q)
}

/// Smallest grid accepted for `|.|^q` quadrature of a field of truncation
/// `truncation`: `4N + 4` for `q <= 4`, growing proportionally with `q` beyond.
pub fn anti_aliasing_floor(truncation: usize, q: f64) -> usize {
    let factor = if q.is_finite() { q.max(4.0) } else { 4.0 };
    ((truncation + 1) as f64 * factor).ceil() as usize
}

/// Power-of-two grid size at or above the anti-aliasing floor.
pub fn default_grid_points(truncation: usize, q: f64) -> usize {
    anti_aliasing_floor(truncation, q).next_power_of_two()
}

pub(crate) fn check_grid(truncation: usize, q: f64, points: usize) -> Result<()> {
    let floor = anti_aliasing_floor(truncation, q);
    if points < floor {
        return Err(LabError::GridTooCoarse {
            got: points,
            floor,
            truncation,
        });
    }
    Ok(())
}
