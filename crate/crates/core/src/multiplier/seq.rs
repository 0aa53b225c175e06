use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::spectral::SpectralField;

type SeqFn = Arc<dyn Fn(i64) -> Complex64 + Send + Sync>;
type SymbolFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A continuously differentiable symbol `m : R -> C` with its derivative.
#[derive(Clone)]
pub struct SmoothSymbol {
    value: SymbolFn,
    derivative: SymbolFn,
}

impl SmoothSymbol {
    pub fn new<F, D>(value: F, derivative: D) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
        D: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        SmoothSymbol {
            value: Arc::new(value),
            derivative: Arc::new(derivative),
        }
    }

    pub fn value(&self, xi: f64) -> Complex64 {
        (self.value)(xi)
    }

    pub fn derivative(&self, xi: f64) -> Complex64 {
        (self.derivative)(xi)
    }
}

/// A Fourier multiplier sequence `(m_n)_{n in Z}`, optionally backed by a smooth symbol.
#[derive(Clone)]
pub struct MultiplierSeq {
    eval: SeqFn,
    symbol: Option<SmoothSymbol>,
    description: String,
}

impl fmt::Debug for MultiplierSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSeq")
            .field("description", &self.description)
            .field("smooth", &self.symbol.is_some())
            .finish()
    }
}

impl MultiplierSeq {
    pub fn from_fn<F>(description: impl Into<String>, eval: F) -> Self
    where
        F: Fn(i64) -> Complex64 + Send + Sync + 'static,
    {
        MultiplierSeq {
            eval: Arc::new(eval),
            symbol: None,
            description: description.into(),
        }
    }

    /// `m_n = m(n)` for a smooth symbol `m` with derivative `dm`.
    pub fn smooth<F, D>(description: impl Into<String>, value: F, derivative: D) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
        D: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        let symbol = SmoothSymbol::new(value, derivative);
        let s = symbol.clone();
        MultiplierSeq {
            eval: Arc::new(move |n| s.value(n as f64)),
            symbol: Some(symbol),
            description: description.into(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        MultiplierSeq::smooth(format!("constant {c}"), move |_| c, |_| Complex64::new(0.0, 0.0))
    }

    /// `1_S` for the set `S = {n : member(n)}`.
    pub fn indicator<P>(description: impl Into<String>, member: P) -> Self
    where
        P: Fn(i64) -> bool + Send + Sync + 'static,
    {
        MultiplierSeq::from_fn(description, move |n| {
            if member(n) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Values `values[n + N]` on `|n| <= N` and zero elsewhere.
    pub fn from_values(description: impl Into<String>, values: Vec<Complex64>) -> Self {
        assert!(values.len() % 2 == 1, "values must cover a symmetric range -N..=N");
        let half = (values.len() / 2) as i64;
        MultiplierSeq::from_fn(description, move |n| {
            if n.abs() <= half {
                values[(n + half) as usize]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        (self.eval)(n)
    }

    pub fn symbol(&self) -> Option<&SmoothSymbol> {
        self.symbol.as_ref()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// `n -> m_{n + k}`; a smooth symbol is shifted along.
    pub fn shifted(&self, k: i64) -> Self {
        let description = format!("{} shifted by {k}", self.description);
        match &self.symbol {
            Some(s) => {
                let (v, d) = (s.clone(), s.clone());
                let kf = k as f64;
                MultiplierSeq::smooth(
                    description,
                    move |xi| v.value(xi + kf),
                    move |xi| d.derivative(xi + kf),
                )
            }
            None => {
                let e = self.eval.clone();
                MultiplierSeq::from_fn(description, move |n| e(n + k))
            }
        }
    }

    /// Pointwise product `m m'`.
    pub fn product(&self, other: &MultiplierSeq) -> Self {
        let description = format!("({}) * ({})", self.description, other.description);
        match (&self.symbol, &other.symbol) {
            (Some(a), Some(b)) => {
                let (av, bv) = (a.clone(), b.clone());
                let (ad, bd) = (a.clone(), b.clone());
                MultiplierSeq::smooth(
                    description,
                    move |xi| av.value(xi) * bv.value(xi),
                    move |xi| ad.derivative(xi) * bd.value(xi) + ad.value(xi) * bd.derivative(xi),
                )
            }
            _ => {
                let (a, b) = (self.eval.clone(), other.eval.clone());
                MultiplierSeq::from_fn(description, move |n| a(n) * b(n))
            }
        }
    }

    /// `max_{|n| <= truncation} |m_n|`.
    pub fn sup_abs(&self, truncation: usize) -> f64 {
        let n = truncation as i64;
        (-n..=n).map(|k| self.eval(k).norm()).fold(0.0, f64::max)
    }
}

/// `T_m f = sum_n m_n f(n) e^{inx}` on the modes of `field`.
pub fn apply_multiplier(m: &MultiplierSeq, field: &SpectralField) -> SpectralField {
    field.map(|n, c| m.eval(n) * c)
}
