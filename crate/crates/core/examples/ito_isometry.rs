//! Monte Carlo check of E||int phi dW||^2 = E int ||phi||^2 dt.

use num_complex::Complex64;
use parabolic_lab::paths::{ito_isometry_check, Integrand};
use parabolic_lab::spectral::{InitialDatum, Order, SpectralField, SpectralSymbols};
use parabolic_lab::Result;

pub fn run_example() -> Result<Vec<(f64, f64)>> {
    let f = SpectralField::from_fn(4, |n| Complex64::new(1.0, n as f64).unscale(1.0 + (n * n) as f64));
    let symbols = SpectralSymbols::structured(Order::Second, 0.2, 0.2);
    let initial = InitialDatum::gaussian(1.0).to_field(&symbols, 4)?;
    let mut out = Vec::new();
    for (name, integrand) in [
        ("f", Integrand::Constant(f.clone())),
        ("W f", Integrand::BrownianTimes(f)),
        ("2 B U", Integrand::NoiseOfSolution { symbols, initial }),
    ] {
        let c = ito_isometry_check(&integrand, 1.0, 32, 4000, 8)?;
        println!("{name:<6} lhs {:.5} rhs {:.5} ratio {:.4} +- {:.4}", c.lhs, c.rhs, c.ratio, c.sigma);
        out.push((c.ratio, c.sigma));
    }
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
