//! The p-th moment of the solution started from a Gaussian datum is finite
//! before the explosion time and infinite from it on.

use parabolic_lab::moments::MomentProblem;
use parabolic_lab::spaces::NormSpec;
use parabolic_lab::spectral::{blow_up_time, InitialDatum, ModelParams};
use parabolic_lab::Result;

pub fn run_example() -> Result<Vec<(f64, f64)>> {
    let params = ModelParams::hilbert(0.0, 1.0, 2.0)?;
    let problem = MomentProblem::second_order(params, InitialDatum::gaussian(1.0), NormSpec::bessel(0.0, 2.0), 256)?;
    println!("closed-form tau = {}, detected = {}", blow_up_time(&params, 1.0), problem.divergence_time());
    let mut rows = Vec::new();
    for t in [0.25, 0.5, 0.9, 0.99, 1.0, 1.5] {
        let est = problem.expected_norm_p(t)?;
        println!("t = {t:<5} E||U||^2 = {:<22} via {:?}", est.value, est.method);
        rows.push((t, est.value));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
