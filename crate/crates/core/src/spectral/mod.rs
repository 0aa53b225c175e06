//! Model parameters, spectral symbols, truncated Fourier fields, and the
//! closed-form solution of the diagonalised equation
//! `dU + AU dt = 2BU dW` mode by mode.

mod field;
mod model;
mod solution;
mod symbols;

pub use field::{FieldPath, InitialDatum, SpectralField};
pub use model::{
    blow_up_time, classical_condition, integrability_condition, lp_condition, split_conditions,
    Condition, ModelParams, SplitConditions,
};
pub use solution::{conditional_field, conditional_field_scaled, mode_solution, ConditionedState};
pub use symbols::{Order, SpectralSymbols};

/// Default truncation for second-order experiments.
pub const DEFAULT_TRUNCATION_SECOND_ORDER: usize = 256;
/// Default truncation for fourth-order experiments; `n^4` underflows sooner.
pub const DEFAULT_TRUNCATION_FOURTH_ORDER: usize = 64;
