//! Periodic Fourier multipliers: application to fields, the Marcinkiewicz
//! constant, empirical lower bounds for `L^q` operator norms, and the
//! factorisation of the conditioned solution into bounded multipliers.

mod empirical;
mod marcinkiewicz;
mod seq;
mod factorisation;

pub use empirical::{empirical_mq_norm, empirical_mq_norm_with, trial_polynomial, Ensemble};
pub use marcinkiewicz::{
    marcinkiewicz_constant, marcinkiewicz_discrete, marcinkiewicz_smooth, LevelVariation,
    MarcinkiewiczReport, VariationRoute, DEFAULT_MAX_LEVEL, DISCRETE_LEVEL_CAP,
};
pub use seq::{apply_multiplier, MultiplierSeq, SmoothSymbol};
pub use factorisation::{
    factorised_multipliers, gaussian_bump, zeta_level_bound, zeta_symbol, FactorisedMultipliers,
    PhaseConvention,
};
