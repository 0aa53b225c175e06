use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::multiplier::seq::{apply_multiplier, MultiplierSeq};
use crate::spaces::{default_grid_points, GridFunction};
use crate::spectral::SpectralField;

/// Random trigonometric polynomials used as test inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ensemble {
    /// Standard complex Gaussian coefficients on every mode.
    #[default]
    Gaussian,
    /// Gaussian coefficients kept independently with probability `density`.
    Sparse { density: f64 },
    /// Gaussian coefficients on the lacunary modes `0, +-1, +-2, +-4, ...` only.
    Lacunary,
}

/// Lower bound for `||T_m||_{L^q -> L^q}` from `trials` random polynomials of
/// degree at most `truncation`, each also tested at every smaller degree, plus
/// the monomials `e^{inx}` with `|n| <= truncation`. Deterministic in `seed`,
/// independent of the thread count.
pub fn empirical_mq_norm(
    m: &MultiplierSeq,
    q: f64,
    trials: usize,
    truncation: usize,
    seed: u64,
) -> Result<f64> {
    empirical_mq_norm_with(m, q, trials, truncation, seed, Ensemble::Gaussian)
}

pub fn empirical_mq_norm_with(
    m: &MultiplierSeq,
    q: f64,
    trials: usize,
    truncation: usize,
    seed: u64,
    ensemble: Ensemble,
) -> Result<f64> {
    if trials == 0 {
        return Err(LabError::InvalidParameter("need at least one trial".into()));
    }
    if !(q >= 1.0) {
        return Err(LabError::InvalidParameter(format!("q must be at least 1, got {q}")));
    }
    if let Ensemble::Sparse { density } = ensemble {
        if !(density > 0.0 && density <= 1.0) {
            return Err(LabError::InvalidParameter(format!(
                "sparse density must lie in (0, 1], got {density}"
            )));
        }
    }
    // A monomial keeps its modulus under T_m, so the ratio is |m_n| exactly.
    let monomials = m.sup_abs(truncation);
    let points = default_grid_points(truncation, q);
    let best = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let field = trial_polynomial(truncation, seed, trial as u64, ensemble);
            best_ratio(m, &field, q, points)
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(monomials, f64::max);
    Ok(best)
}

/// Largest `||T_m f_k||_q / ||f_k||_q` over the truncations `f_k` of `field`, `k <= N`.
fn best_ratio(m: &MultiplierSeq, field: &SpectralField, q: f64, points: usize) -> Result<f64> {
    let image = apply_multiplier(m, field);
    let mut best = 0.0f64;
    for k in 0..=field.truncation() {
        let f = field.retruncate(k).retruncate(field.truncation());
        let g = image.retruncate(k).retruncate(field.truncation());
        let den = GridFunction::from_field(&f, points)?.lq_norm(q);
        if den == 0.0 {
            continue;
        }
        let num = GridFunction::from_field(&g, points)?.lq_norm(q);
        best = best.max(num / den);
    }
    Ok(best)
}

/// Coefficients drawn in the order `0, 1, -1, 2, -2, ...`, so a polynomial at a
/// larger truncation extends the one at a smaller truncation.
pub fn trial_polynomial(truncation: usize, seed: u64, trial: u64, ensemble: Ensemble) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut field = SpectralField::zeros(truncation);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let draw = |rng: &mut ChaCha8Rng, n: i64| -> Complex64 {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        let keep = match ensemble {
            Ensemble::Gaussian => true,
            Ensemble::Sparse { density } => rng.random::<f64>() < density,
            Ensemble::Lacunary => n == 0 || n.unsigned_abs().is_power_of_two(),
        };
        if keep {
            Complex64::new(re * scale, im * scale)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let n_max = truncation as i64;
    for k in 0..=n_max {
        for n in if k == 0 { vec![0] } else { vec![k, -k] } {
            let c = draw(&mut rng, n);
            *field.get_mut(n).expect("mode within truncation") = c;
        }
    }
    field
}
