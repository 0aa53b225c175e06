use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::spectral::ModelParams;

/// Order of the drift operator for the structured symbol families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// `A = -Laplacian`, `B = alpha D + beta |D|`: `a(n) = n^2`, `b(n) = beta|n| + i alpha n`.
    Second,
    /// `A = Laplacian^2`, `B = alpha C + beta |C|` with `C = i Laplacian`:
    /// `a(n) = n^4`, `b(n) = beta n^2 - i alpha n^2`.
    Fourth,
}

type DriftFn = dyn Fn(i64) -> f64 + Send + Sync;
type NoiseFn = dyn Fn(i64) -> Complex64 + Send + Sync;

#[derive(Clone)]
enum Kind {
    Structured { order: Order, alpha: f64, beta: f64 },
    Custom { a: Arc<DriftFn>, b: Arc<NoiseFn>, label: String },
}

/// Drift symbol `a(n)` (eigenvalue of `A`) and noise symbol `b(n)`
/// (eigenvalue of `B`) of a diagonal equation on the torus.
///
/// The structured families all have the form `a = c^2`,
/// `b = beta |c| + i alpha c` for a real frequency map `c(n)`, which is what
/// makes the moment reduction and tail analysis exact.
#[derive(Clone)]
pub struct SpectralSymbols {
    kind: Kind,
}

impl fmt::Debug for SpectralSymbols {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Structured { order, alpha, beta } => f
                .debug_struct("SpectralSymbols")
                .field("order", order)
                .field("alpha", alpha)
                .field("beta", beta)
                .finish(),
            Kind::Custom { label, .. } => write!(f, "SpectralSymbols(custom: {label})"),
        }
    }
}

impl SpectralSymbols {
    pub fn structured(order: Order, alpha: f64, beta: f64) -> Self {
        SpectralSymbols {
            kind: Kind::Structured { order, alpha, beta },
        }
    }

    /// `a(n) = n^2`, `b(n) = beta|n| + i alpha n`, taking alpha and beta from `params`.
    pub fn second_order(params: &ModelParams) -> Self {
        Self::structured(Order::Second, params.alpha, params.beta)
    }

    /// `a(n) = n^4`, `b(n) = beta n^2`, the noise `-2 beta Laplacian dW`.
    pub fn fourth_order(beta: f64) -> Self {
        Self::structured(Order::Fourth, 0.0, beta)
    }

    /// Arbitrary symbols. The moment engine treats these as having no
    /// Gaussian tail structure.
    pub fn custom<A, B>(label: impl Into<String>, a: A, b: B) -> Self
    where
        A: Fn(i64) -> f64 + Send + Sync + 'static,
        B: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        SpectralSymbols {
            kind: Kind::Custom {
                a: Arc::new(a),
                b: Arc::new(b),
                label: label.into(),
            },
        }
    }

    /// Frequency map `c(n)` of the structured families.
    fn c(order: Order, n: i64) -> f64 {
        let n = n as f64;
        match order {
            Order::Second => n,
            Order::Fourth => -n * n,
        }
    }

    pub fn a(&self, n: i64) -> f64 {
        match &self.kind {
            Kind::Structured { order, .. } => {
                let c = Self::c(*order, n);
                c * c
            }
            Kind::Custom { a, .. } => a(n),
        }
    }

    pub fn b(&self, n: i64) -> Complex64 {
        match &self.kind {
            Kind::Structured { order, alpha, beta } => {
                let c = Self::c(*order, n);
                Complex64::new(beta * c.abs(), alpha * c)
            }
            Kind::Custom { b, .. } => b(n),
        }
    }

    /// `|c(n)|` for structured symbols, `None` for custom ones.
    pub fn frequency(&self, n: i64) -> Option<f64> {
        match &self.kind {
            Kind::Structured { order, .. } => Some(Self::c(*order, n).abs()),
            Kind::Custom { .. } => None,
        }
    }

    /// `(alpha, beta)` for structured symbols.
    pub fn coefficients(&self) -> Option<(f64, f64)> {
        match &self.kind {
            Kind::Structured { alpha, beta, .. } => Some((*alpha, *beta)),
            Kind::Custom { .. } => None,
        }
    }

    pub fn order(&self) -> Option<Order> {
        match &self.kind {
            Kind::Structured { order, .. } => Some(*order),
            Kind::Custom { .. } => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            Kind::Structured { order, alpha, beta } => {
                format!("{order:?}(alpha={alpha}, beta={beta})")
            }
            Kind::Custom { label, .. } => label.clone(),
        }
    }

    /// Largest `a(n)` over `|n| <= truncation`.
    pub fn max_drift(&self, truncation: usize) -> f64 {
        let n = truncation as i64;
        (-n..=n).map(|k| self.a(k)).fold(0.0, f64::max)
    }
}
