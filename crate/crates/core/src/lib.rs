//! Spectral laboratory for the linear stochastic heat equation with gradient
//! noise on the torus, `dU + AU dt = 2BU dW` with `A = -Laplacian` and
//! `B = alpha D + beta |D|`.

// Negated float comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod moments;
pub mod multiplier;
pub mod numeric;
pub mod paths;
pub mod spaces;
pub mod spectral;

pub use error::{LabError, Result};
