//! Which noise strengths keep the p-th moment finite, for a few values of p.

use parabolic_lab::spectral::{blow_up_time, classical_condition, lp_condition, split_conditions, ModelParams};
use parabolic_lab::Result;

pub fn run_example() -> Result<Vec<(f64, f64, f64, bool)>> {
    let mut cells = Vec::new();
    println!("{:>6} {:>6} {:>4} {:>9} {:>6} {:>9} {:>10}", "alpha", "beta", "p", "classical", "lp", "split", "tau(d=1)");
    for p in [2.0, 4.0] {
        for alpha in [0.0, 0.3, 0.6] {
            for beta in [0.2, 0.4, 0.6] {
                let params = ModelParams::hilbert(alpha, beta, p)?;
                let lp = lp_condition(&params);
                println!(
                    "{alpha:>6} {beta:>6} {p:>4} {:>9} {:>6} {:>9} {:>10.4}",
                    classical_condition(&params).holds,
                    lp.holds,
                    split_conditions(&params).both(),
                    blow_up_time(&params, 1.0)
                );
                cells.push((alpha, beta, p, lp.holds));
            }
        }
    }
    Ok(cells)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
