//! Pathwise simulation of the truncated mode system driven by a single
//! scalar Brownian motion, with Monte Carlo cross-checks.

mod brownian;
mod ito;
mod monte_carlo;
mod residual;
mod scheme;

pub use brownian::{path_rng, BrownianPath};
pub use ito::{ito_isometry_check, Integrand, IsometryCheck};
pub use monte_carlo::{monte_carlo_moment, summarise, MonteCarloEstimate, HEAVY_TAIL_KURTOSIS, MIN_PATHS};
pub use residual::{strong_solution_residual, ResidualReport};
pub use scheme::{simulate_path, SchemeKind, EULER_STABILITY_LIMIT};
