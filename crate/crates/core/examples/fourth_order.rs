//! Drift a(n) = n^4 with noise b(n) = beta n^2: the same p-dependent
//! threshold as in the second-order case.

use parabolic_lab::moments::MomentProblem;
use parabolic_lab::spaces::NormSpec;
use parabolic_lab::spectral::{InitialDatum, ModelParams, SpectralSymbols};
use parabolic_lab::Result;

pub fn run_example() -> Result<(f64, f64)> {
    let beta = 0.6;
    let mild = MomentProblem::new(
        ModelParams::hilbert(0.0, beta, 1.5)?,
        SpectralSymbols::fourth_order(beta),
        InitialDatum::gaussian(1.0),
        NormSpec::bessel(0.0, 2.0),
        64,
    )?;
    let integrated = mild.time_integrated_moment(1.0, 32)?;
    println!("p = 1.5: (int_0^1 E||U||^p dt)^(1/p) = {integrated:.6}, divergence time {}", mild.divergence_time());

    let wild = MomentProblem::new(
        ModelParams::hilbert(0.0, beta, 4.0)?,
        SpectralSymbols::fourth_order(beta),
        InitialDatum::gaussian(1.0),
        NormSpec::bessel(0.0, 2.0),
        64,
    )?;
    let tau = wild.divergence_time();
    println!("p = 4:   divergence time {tau:.6}; E||U||^4 at 0.9 tau = {:.4}, at tau = {}", wild.expected_norm_p(0.9 * tau)?.value, wild.expected_norm_p(tau)?.value);
    Ok((integrated, tau))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
