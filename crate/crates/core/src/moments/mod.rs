//! `L^p(Omega)` moments of solution norms. The solution depends on the noise
//! only through the scalar `W(t)`, so every moment is a one-dimensional
//! Gaussian integral.

mod engine;
mod hermite;

pub use engine::{
    divergence_time, GaussianReduction, MomentEstimate, MomentMethod, MomentProblem,
    CRITICAL_MARGIN, NEAR_CRITICAL,
};
pub use hermite::{hermite_rule, HermiteRule, MAX_HERMITE_NODES};

/// `E exp(c Z^2) = (1 - 2c)^{-1/2}` for a standard normal `Z`; `+inf` for `c >= 1/2`.
pub fn gaussian_exp_moment(c: f64) -> f64 {
    if c < 0.5 {
        (1.0 - 2.0 * c).sqrt().recip()
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(gaussian_exp_moment(0.0), 1.0);
        assert!((gaussian_exp_moment(0.25) - 2f64.sqrt()).abs() < 1e-15);
        assert!(gaussian_exp_moment(0.5).is_infinite());
        assert!(gaussian_exp_moment(-1.0) < 1.0);
    }

    #[test]
    fn agrees_with_hermite_quadrature() {
        let rule = hermite_rule(80).unwrap();
        for c in [-0.7, 0.1, 0.2] {
            // E e^{cZ^2} = pi^{-1/2} int e^{-x^2} e^{2c x^2} dx.
            let v: f64 = rule
                .nodes
                .iter()
                .zip(&rule.log_weights)
                .map(|(x, lw)| (lw + 2.0 * c * x * x).exp())
                .sum::<f64>()
                / std::f64::consts::PI.sqrt();
            assert!((v - gaussian_exp_moment(c)).abs() < 1e-10);
        }
    }
}
