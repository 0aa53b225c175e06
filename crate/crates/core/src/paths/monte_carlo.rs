use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::moments::MomentProblem;
use crate::numeric::pairwise_sum;
use crate::paths::brownian::path_rng;

/// Excess kurtosis above which a sample mean is flagged as unreliable.
pub const HEAVY_TAIL_KURTOSIS: f64 = 100.0;
/// Smallest accepted number of paths.
pub const MIN_PATHS: usize = 100;

/// Sample mean of `||U(t)||^p` with a 95% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub ci95: f64,
    pub std_error: f64,
    /// Sample excess kurtosis of the per-path values; 0 for constant samples.
    pub excess_kurtosis: f64,
    /// Set when the kurtosis exceeds [`HEAVY_TAIL_KURTOSIS`] or a sample overflowed.
    /// The estimate is still reported but should not be trusted.
    pub heavy_tail: bool,
    pub paths: usize,
}

impl MonteCarloEstimate {
    /// Whether `value` lies inside the 95% interval.
    pub fn covers(&self, value: f64) -> bool {
        (self.estimate - value).abs() <= self.ci95
    }
}

/// Draws `W(t) = sqrt(t) Z` once per path (path `i` uses ChaCha stream `i` of
/// `seed`) and averages the conditioned `p`-th powers of the norm.
pub fn monte_carlo_moment(problem: &MomentProblem, t: f64, paths: usize, seed: u64) -> Result<MonteCarloEstimate> {
    if paths < MIN_PATHS {
        return Err(LabError::InvalidParameter(format!("need at least {MIN_PATHS} paths, got {paths}")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(LabError::InvalidParameter(format!("time must be finite and >= 0, got {t}")));
    }
    let p = problem.params.p;
    let samples = (0..paths as u64)
        .into_par_iter()
        .map(|i| {
            let z: f64 = path_rng(seed, i).sample(StandardNormal);
            problem
                .log_conditional_norm(t, t.sqrt() * z)
                .map(|ln| (p * ln).exp())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(summarise(&samples))
}

/// Mean, 95% half-width and excess kurtosis of a sample, shifted by the first
/// value so that constant samples give exactly zero spread.
pub fn summarise(samples: &[f64]) -> MonteCarloEstimate {
    let n = samples.len();
    let nf = n as f64;
    let overflow = samples.iter().any(|x| !x.is_finite());
    let shift = samples[0];
    let d: Vec<f64> = samples.iter().map(|x| x - shift).collect();
    let mean_d = pairwise_sum(&d) / nf;
    let centred: Vec<f64> = d.iter().map(|x| x - mean_d).collect();
    let m2 = pairwise_sum(&centred.iter().map(|x| x * x).collect::<Vec<_>>()) / nf;
    let m4 = pairwise_sum(&centred.iter().map(|x| x.powi(4)).collect::<Vec<_>>()) / nf;
    let variance = if n > 1 { m2 * nf / (nf - 1.0) } else { 0.0 };
    let std_error = (variance / nf).sqrt();
    let excess_kurtosis = if m2 > 0.0 { m4 / (m2 * m2) - 3.0 } else { 0.0 };
    MonteCarloEstimate {
        estimate: shift + mean_d,
        ci95: 1.96 * std_error,
        std_error,
        excess_kurtosis,
        heavy_tail: overflow || excess_kurtosis > HEAVY_TAIL_KURTOSIS,
        paths: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::NormSpec;
    use crate::spectral::{InitialDatum, ModelParams};

    fn problem(alpha: f64, beta: f64) -> MomentProblem {
        let params = ModelParams::hilbert(alpha, beta, 2.0).unwrap();
        MomentProblem::second_order(params, InitialDatum::gaussian(1.0), NormSpec::bessel(0.0, 2.0), 32)
            .unwrap()
    }

    #[test]
    fn no_noise_amplitude_gives_zero_width() {
        let est = monte_carlo_moment(&problem(0.3, 0.0), 0.5, 200, 1).unwrap();
        assert_eq!(est.ci95, 0.0);
        assert!(!est.heavy_tail);
        let exact = problem(0.3, 0.0).expected_norm_p(0.5).unwrap().value;
        assert!((est.estimate - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn reproducible_across_thread_pools() {
        let pr = problem(0.1, 0.3);
        let a = monte_carlo_moment(&pr, 0.4, 500, 9).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| monte_carlo_moment(&pr, 0.4, 500, 9).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn kurtosis_of_known_samples() {
        let s = summarise(&[1.0, -1.0, 1.0, -1.0]);
        assert_eq!(s.estimate, 0.0);
        assert!((s.excess_kurtosis + 2.0).abs() < 1e-15);
        let mut heavy = vec![0.0; 10_000];
        heavy[0] = 1.0;
        assert!(summarise(&heavy).heavy_tail);
    }

    #[test]
    fn rejects_few_paths() {
        assert!(monte_carlo_moment(&problem(0.1, 0.1), 0.5, 10, 0).is_err());
    }
}
