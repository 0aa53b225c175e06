use crate::error::{LabError, Result};
use crate::spaces::grid::{check_grid, lq_norm_of_moduli, GridFunction};
use crate::spaces::norms::bessel_weighted;
use crate::spectral::FieldPath;

/// `|| ( int_0^T |(1-Laplacian)^{s/2} phi(t, x)|^2 dt )^{1/2} ||_{L^q(T, dx)}`
/// for one sample path `phi`: trapezoid rule in time at every grid point,
/// then the periodic trapezoid `L^q` norm in space.
pub fn square_fn_norm(path: &FieldPath, s: f64, q: f64, grid_points: usize) -> Result<f64> {
    if path.len() < 2 {
        return Err(LabError::InvalidParameter(format!(
            "square-function norm needs at least 2 time points, got {}",
            path.len()
        )));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(LabError::InvalidParameter(format!("q must lie in (1, inf), got {q}")));
    }
    check_grid(path.truncation(), q, grid_points)?;

    let sq: Vec<Vec<f64>> = path
        .fields()
        .iter()
        .map(|f| {
            GridFunction::from_field(&bessel_weighted(f, s), grid_points)
                .map(|g| g.values().iter().map(|v| v.norm_sqr()).collect())
        })
        .collect::<Result<_>>()?;

    let times = path.times();
    let mut acc = vec![0.0; grid_points];
    for k in 0..times.len() - 1 {
        let half_dt = 0.5 * (times[k + 1] - times[k]);
        for (j, a) in acc.iter_mut().enumerate() {
            *a += half_dt * (sq[k][j] + sq[k + 1][j]);
        }
    }
    let moduli: Vec<f64> = acc.iter().map(|a| a.sqrt()).collect();
    Ok(lq_norm_of_moduli(&moduli, q))
}
