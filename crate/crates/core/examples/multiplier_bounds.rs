//! Splits the conditioned solution into Fourier multipliers and bounds each
//! by its Marcinkiewicz constant and an empirical operator norm.

use num_complex::Complex64;
use parabolic_lab::multiplier::{
    empirical_mq_norm, factorised_multipliers, marcinkiewicz_constant, zeta_level_bound, DEFAULT_MAX_LEVEL,
};
use parabolic_lab::spectral::ModelParams;
use parabolic_lab::Result;

pub fn run_example() -> Result<(f64, f64, f64)> {
    let params = ModelParams::new(0.2, 0.3, 2.0, 4.0, 0.0)?;
    let (t, w, eps) = (0.5, 1.2, 0.1);
    let fm = factorised_multipliers(t, w, &params, eps)?;
    println!("f = {:.4}, g = {:.4} (floor {}, r = {:.4}), h = {:.4}", fm.f, fm.shift, fm.floor_shift, fm.fractional_shift, fm.h);

    let k1 = marcinkiewicz_constant(&fm.m1, DEFAULT_MAX_LEVEL)?;
    let k2 = marcinkiewicz_constant(&fm.m2, DEFAULT_MAX_LEVEL)?;
    let k3 = marcinkiewicz_constant(&fm.m3, DEFAULT_MAX_LEVEL)?;
    println!("K(m1) = {:.4} [{:?}], K(m2) = {:.4} <= {:.4}, K(m3) = {:.4}", k1.k, k1.route, k2.k, zeta_level_bound(0.2, 0.3, eps), k3.k);

    let m = fm.m1.product(&fm.m2);
    let emp = empirical_mq_norm(&m, params.q, 16, 64, 7)?;
    println!("empirical ||T_(m1 m2)||_(L^4 -> L^4) >= {emp:.4}");

    let check = fm.reconstruct(3, Complex64::new(1.0, 0.0));
    println!("v_3 for a unit coefficient: {check:.6}");
    Ok((k1.k, k3.k, emp))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
