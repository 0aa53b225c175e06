//! Bessel, Besov, interpolation and square-function norms of small fields.

use num_complex::Complex64;
use parabolic_lab::paths::{simulate_path, BrownianPath, SchemeKind};
use parabolic_lab::spaces::NormSpec;
use parabolic_lab::spectral::{Order, SpectralField, SpectralSymbols};
use parabolic_lab::Result;

pub fn run_example() -> Result<Vec<(String, f64)>> {
    let symbols = SpectralSymbols::structured(Order::Second, 0.0, 0.0);
    let f = SpectralField::from_fn(16, |n| Complex64::new(1.0 / (1.0 + (n * n) as f64), 0.0));
    let specs = [
        ("H^{0,2}", NormSpec::bessel(0.0, 2.0)),
        ("H^{1,4}", NormSpec::bessel(1.0, 4.0)),
        ("B^{1/2}_{2,1}", NormSpec::besov(0.5, 2.0, 1.0)),
        ("B^{1/2}_{2,inf}", NormSpec::besov(0.5, 2.0, f64::INFINITY)),
        ("D_A(1/2,2)", NormSpec::interp_da(0.5, 2.0, 0.0)),
    ];
    let mut out = Vec::new();
    for (name, spec) in specs {
        let v = spec.evaluate(&f, &symbols)?;
        println!("{name:<16} {v:.10}");
        out.push((name.to_string(), v));
    }
    let heat = SpectralSymbols::structured(Order::Second, 0.1, 0.2);
    let path = BrownianPath::uniform(1.0, 256, 3, 0)?;
    let solution = simulate_path(&path, SchemeKind::ExactExponential, &heat, &f)?;
    let sq = NormSpec::square_fn(0.0, 2.0).evaluate_path(&solution)?;
    println!("{:<16} {sq:.10}  (one sample of || ||U||_{{L^2(0,1)}} ||_{{L^2}})", "square function");
    out.push(("square function".to_string(), sq));
    Ok(out)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
