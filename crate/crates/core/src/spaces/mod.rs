//! Norms of truncated spectral fields: Bessel potential `H^{s,q}`, Besov
//! `B^s_{q,p}`, the real-interpolation space `D_A(theta, p)` over `H^{s,2}`, and
//! the `L^q(L^2(0,T))` square-function norm of a sampled path.

mod grid;
mod interp;
mod norms;
mod square_fn;

pub use grid::{anti_aliasing_floor, default_grid_points, GridFunction};
pub use interp::{interp_da_norm, InterpNorm};
pub use norms::{
    besov_norm, bessel_norm, bessel_weighted, block_part, dyadic_block, sobolev_norm_sq,
};
pub use square_fn::square_fn_norm;


use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::spectral::{FieldPath, SpectralField, SpectralSymbols};

/// Which norm to evaluate. Besov `p = inf` is written as `"inf"` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormKind {
    Bessel {
        s: f64,
        q: f64,
    },
    Besov {
        s: f64,
        q: f64,
        #[serde(with = "extended_real")]
        p: f64,
    },
    InterpDa {
        theta: f64,
        p: f64,
        #[serde(default)]
        s: f64,
        #[serde(default = "default_time_nodes")]
        time_quad_nodes: usize,
    },
    SquareFn {
        s: f64,
        q: f64,
    },
}

fn default_time_nodes() -> usize {
    32
}

/// A norm together with an optional spatial grid size. Without one, the
/// smallest power of two above the anti-aliasing floor is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    #[serde(flatten)]
    pub kind: NormKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
}

impl NormSpec {
    pub fn bessel(s: f64, q: f64) -> Self {
        NormKind::Bessel { s, q }.into()
    }

    pub fn besov(s: f64, q: f64, p: f64) -> Self {
        NormKind::Besov { s, q, p }.into()
    }

    pub fn interp_da(theta: f64, p: f64, s: f64) -> Self {
        NormKind::InterpDa {
            theta,
            p,
            s,
            time_quad_nodes: default_time_nodes(),
        }
        .into()
    }

    pub fn square_fn(s: f64, q: f64) -> Self {
        NormKind::SquareFn { s, q }.into()
    }

    pub fn with_grid_points(mut self, points: usize) -> Self {
        self.grid_points = Some(points);
        self
    }

    /// Spatial integrability exponent; 2 for the interpolation norm.
    pub fn q(&self) -> f64 {
        match self.kind {
            NormKind::Bessel { q, .. } | NormKind::Besov { q, .. } | NormKind::SquareFn { q, .. } => {
                q
            }
            NormKind::InterpDa { .. } => 2.0,
        }
    }

    /// Smoothness index `s` of the norm.
    pub fn s(&self) -> f64 {
        match self.kind {
            NormKind::Bessel { s, .. }
            | NormKind::Besov { s, .. }
            | NormKind::SquareFn { s, .. }
            | NormKind::InterpDa { s, .. } => s,
        }
    }

    /// Grid size used for a field of truncation `truncation`.
    pub fn grid_for(&self, truncation: usize) -> usize {
        self.grid_points
            .unwrap_or_else(|| default_grid_points(truncation, self.q()))
    }

    /// Norm of a single field. The square-function norm needs a path and is rejected here.
    pub fn evaluate(&self, field: &SpectralField, symbols: &SpectralSymbols) -> Result<f64> {
        let grid = self.grid_for(field.truncation());
        match self.kind {
            NormKind::Bessel { s, q } => bessel_norm(field, s, q, grid),
            NormKind::Besov { s, q, p } => besov_norm(field, s, q, p, grid),
            NormKind::InterpDa {
                theta,
                p,
                s,
                time_quad_nodes,
            } => interp_da_norm(field, theta, p, s, symbols, time_quad_nodes).map(|v| v.value()),
            NormKind::SquareFn { .. } => Err(LabError::InvalidParameter(
                "square-function norm needs a time-indexed path".into(),
            )),
        }
    }

    /// Norm of a sampled path; only the square-function norm is defined here.
    pub fn evaluate_path(&self, path: &FieldPath) -> Result<f64> {
        match self.kind {
            NormKind::SquareFn { s, q } => {
                square_fn_norm(path, s, q, self.grid_for(path.truncation()))
            }
            _ => Err(LabError::InvalidParameter(
                "only the square-function norm is defined on paths".into(),
            )),
        }
    }
}

impl From<NormKind> for NormSpec {
    fn from(kind: NormKind) -> Self {
        NormSpec {
            kind,
            grid_points: None,
        }
    }
}

/// Serialises `f64::INFINITY` as the string `"inf"` and accepts either form back.
pub(crate) mod extended_real {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() && *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) if t == "inf" || t == "infinity" => Ok(f64::INFINITY),
            Repr::Text(t) => Err(de::Error::custom(format!(
                "expected a number or \"inf\", got {t:?}"
            ))),
        }
    }
}
