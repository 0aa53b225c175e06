use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::paths::brownian::BrownianPath;
use crate::spaces::NormSpec;
use crate::spectral::{FieldPath, SpectralField, SpectralSymbols};

/// Largest defect in the integral identity
/// `U(t) - u0 + int_0^t A U ds - int_0^t 2 B U dW = 0` over the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// `max_k ||R(t_k)||` in the chosen norm.
    pub max_residual: f64,
    /// `max_k ||U(t_k)||` in the same norm.
    pub max_solution_norm: f64,
}

impl ResidualReport {
    pub fn relative(&self) -> f64 {
        if self.max_solution_norm == 0.0 {
            0.0
        } else {
            self.max_residual / self.max_solution_norm
        }
    }
}

/// Residual of a sampled solution on the grid of `path`: trapezoid rule for
/// the drift integral, left-point (Itô) sums for the stochastic integral.
pub fn strong_solution_residual(
    path: &BrownianPath,
    solution: &FieldPath,
    symbols: &SpectralSymbols,
    norm: &NormSpec,
) -> Result<ResidualReport> {
    if solution.times() != path.times() {
        return Err(LabError::Shape("solution was not produced on the path's grid".into()));
    }
    let fields = solution.fields();
    let u0 = &fields[0];
    let truncation = u0.truncation();
    let width = 2 * truncation + 1;
    let a: Vec<f64> = u0.modes().map(|n| symbols.a(n)).collect();
    let b2: Vec<Complex64> = u0.modes().map(|n| 2.0 * symbols.b(n)).collect();

    let mut drift = vec![Complex64::new(0.0, 0.0); width];
    let mut stochastic = vec![Complex64::new(0.0, 0.0); width];
    let mut max_residual = 0.0f64;
    let mut max_solution_norm = norm.evaluate(u0, symbols)?;
    let times = path.times();
    for k in 0..path.steps() {
        let dt = times[k + 1] - times[k];
        let dw = path.increments()[k];
        let (left, right) = (fields[k].coeffs(), fields[k + 1].coeffs());
        for i in 0..width {
            drift[i] += 0.5 * dt * a[i] * (left[i] + right[i]);
            stochastic[i] += b2[i] * left[i] * dw;
        }
        let residual = SpectralField::from_fn(truncation, |n| {
            let i = (n + truncation as i64) as usize;
            right[i] - u0.coeffs()[i] + drift[i] - stochastic[i]
        });
        max_residual = max_residual.max(norm.evaluate(&residual, symbols)?);
        max_solution_norm = max_solution_norm.max(norm.evaluate(&fields[k + 1], symbols)?);
    }
    Ok(ResidualReport {
        max_residual,
        max_solution_norm,
    })
}
