//! Euler-Maruyama against the exact exponential scheme on nested grids, and
//! the residual of the integral identity for the exact scheme.

use parabolic_lab::paths::{simulate_path, strong_solution_residual, BrownianPath, SchemeKind};
use parabolic_lab::spaces::{sobolev_norm_sq, NormSpec};
use parabolic_lab::spectral::{InitialDatum, Order, SpectralSymbols};
use parabolic_lab::Result;

pub fn run_example() -> Result<Vec<(f64, f64, f64)>> {
    let symbols = SpectralSymbols::structured(Order::Second, 0.2, 0.3);
    let u0 = InitialDatum::gaussian(0.5).to_field(&symbols, 4)?;
    let paths = 32;
    let mut rows = Vec::new();
    for level in 7..=11u32 {
        let (mut err, mut res) = (0.0, 0.0);
        for i in 0..paths {
            let fine = BrownianPath::uniform(1.0, 1 << 11, 99, i)?;
            let path = fine.coarsen(1 << (11 - level))?;
            let em = simulate_path(&path, SchemeKind::EulerMaruyama, &symbols, &u0)?;
            let exact = simulate_path(&path, SchemeKind::ExactExponential, &symbols, &u0)?;
            let diff = em.last().unwrap().sub(exact.last().unwrap())?;
            err += sobolev_norm_sq(&diff, 0.0).sqrt() / paths as f64;
            res += strong_solution_residual(&path, &exact, &symbols, &NormSpec::bessel(0.0, 2.0))?.relative()
                / paths as f64;
        }
        let dt = 0.5f64.powi(level as i32);
        println!("dt = 2^-{level:<2}  EM error {err:.3e}  exact-scheme residual {res:.3e}");
        rows.push((dt, err, res));
    }
    Ok(rows)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
