use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::paths::brownian::BrownianPath;
use crate::spectral::{FieldPath, SpectralField, SpectralSymbols};

/// Time stepping for the mode system `dv_n = -a(n) v_n dt + 2 b(n) v_n dW`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    /// `v_{k+1} = v_k (1 - a dt + 2 b dW)`.
    EulerMaruyama,
    /// Exact lognormal transition `exp(-dt (a + 2 b^2) + 2 b dW)`. The
    /// transitions are composed in the exponent, which is evaluated from the
    /// running time and running `W`, so no rounding accumulates in products.
    ExactExponential,
}

/// Largest `dt * max a(n)` accepted by the Euler-Maruyama scheme.
pub const EULER_STABILITY_LIMIT: f64 = 0.5;

/// All modes of the truncated system driven by one shared path.
pub fn simulate_path(
    path: &BrownianPath,
    scheme: SchemeKind,
    symbols: &SpectralSymbols,
    initial: &SpectralField,
) -> Result<FieldPath> {
    let times = path.times().to_vec();
    let mut fields = Vec::with_capacity(times.len());
    fields.push(initial.clone());
    match scheme {
        SchemeKind::ExactExponential => {
            let coeffs: Vec<(i64, Complex64, f64, Complex64)> = initial
                .iter()
                .map(|(n, c)| (n, c, symbols.a(n), symbols.b(n)))
                .collect();
            for (t, w) in times.iter().zip(path.values()).skip(1) {
                fields.push(initial.map(|n, c| {
                    let (_, _, a, b) = coeffs[(n + initial.truncation() as i64) as usize];
                    if c == Complex64::new(0.0, 0.0) {
                        c
                    } else {
                        (-t * a - 2.0 * t * b * b + 2.0 * b * w).exp() * c
                    }
                }));
            }
        }
        SchemeKind::EulerMaruyama => {
            let guard = path.max_dt() * symbols.max_drift(initial.truncation());
            if guard > EULER_STABILITY_LIMIT {
                return Err(LabError::StabilityGuard(guard));
            }
            let mut current = initial.clone();
            for (k, dw) in path.increments().iter().enumerate() {
                let dt = times[k + 1] - times[k];
                current = current.map(|n, v| v * (1.0 - symbols.a(n) * dt + 2.0 * symbols.b(n) * dw));
                fields.push(current.clone());
            }
        }
    }
    FieldPath::new(times, fields)
}
