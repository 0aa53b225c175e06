//! Quadrature moments against a Monte Carlo estimate from sampled W(t).

use parabolic_lab::moments::MomentProblem;
use parabolic_lab::paths::monte_carlo_moment;
use parabolic_lab::spaces::NormSpec;
use parabolic_lab::spectral::{InitialDatum, ModelParams};
use parabolic_lab::Result;

pub fn run_example() -> Result<Vec<(f64, f64, bool)>> {
    let params = ModelParams::new(0.1, 0.4, 2.0, 4.0, 0.5)?;
    let problem = MomentProblem::second_order(params, InitialDatum::gaussian(1.0), NormSpec::bessel(0.5, 4.0), 64)?;
    let mut rows = Vec::new();
    for t in [0.1, 0.5, 1.0] {
        let exact = problem.expected_norm_p(t)?;
        let mc = monte_carlo_moment(&problem, t, 4000, 2024)?;
        println!(
            "t = {t:<4} quadrature {:.6} ({} nodes)  MC {:.6} +- {:.6}{}",
            exact.value,
            exact.quad_nodes,
            mc.estimate,
            mc.ci95,
            if mc.heavy_tail { "  [heavy tail]" } else { "" }
        );
        rows.push((exact.value, mc.estimate, mc.covers(exact.value)));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
