use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::spectral::SpectralSymbols;

/// Truncated two-sided Fourier coefficients `{f(n) : |n| <= N}` of a
/// function on the torus `[0, 2pi)`, stored from `n = -N` to `n = N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralField {
    truncation: usize,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn new(truncation: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * truncation + 1 {
            return Err(LabError::Shape(format!(
                "truncation {truncation} needs {} coefficients, got {}",
                2 * truncation + 1,
                coeffs.len()
            )));
        }
        Ok(SpectralField { truncation, coeffs })
    }

    pub fn zeros(truncation: usize) -> Self {
        SpectralField {
            truncation,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * truncation + 1],
        }
    }

    pub fn from_fn<F: FnMut(i64) -> Complex64>(truncation: usize, mut f: F) -> Self {
        let n = truncation as i64;
        SpectralField {
            truncation,
            coeffs: (-n..=n).map(&mut f).collect(),
        }
    }

    /// `amplitude * e^{i mode x}`.
    pub fn single_mode(truncation: usize, mode: i64, amplitude: Complex64) -> Result<Self> {
        let mut f = Self::zeros(truncation);
        *f.get_mut(mode)? = amplitude;
        Ok(f)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let n = self.truncation as i64;
        -n..=n
    }

    /// Iterator of `(n, f(n))`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.modes().zip(self.coeffs.iter().copied())
    }

    fn index(&self, n: i64) -> Result<usize> {
        if n.unsigned_abs() as usize > self.truncation {
            return Err(LabError::ModeOutOfRange {
                mode: n,
                truncation: self.truncation,
            });
        }
        Ok((n + self.truncation as i64) as usize)
    }

    pub fn get(&self, n: i64) -> Result<Complex64> {
        Ok(self.coeffs[self.index(n)?])
    }

    pub fn get_mut(&mut self, n: i64) -> Result<&mut Complex64> {
        let i = self.index(n)?;
        Ok(&mut self.coeffs[i])
    }

    /// Coefficient at `n`, zero outside the truncation.
    pub fn coeff_or_zero(&self, n: i64) -> Complex64 {
        self.get(n).unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Whether `f(-n) = conj(f(n))` holds for every mode within `tol`
    /// (absolute, scaled by the largest coefficient).
    pub fn is_real_valued(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        self.modes()
            .filter(|&n| n >= 0)
            .all(|n| (self.coeff_or_zero(-n) - self.coeff_or_zero(n).conj()).norm() <= tol * scale)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficient-wise map `f(n) -> g(n, f(n))`.
    pub fn map<F: FnMut(i64, Complex64) -> Complex64>(&self, mut g: F) -> Self {
        SpectralField {
            truncation: self.truncation,
            coeffs: self.iter().map(|(n, c)| g(n, c)).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|_, c| c * factor)
    }

    pub fn add(&self, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(
        &self,
        other: &SpectralField,
        op: F,
    ) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(LabError::Shape(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(SpectralField {
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    /// Multiplication by `e^{i k x}`: shifts every coefficient from `n` to `n + k`,
    /// enlarging the truncation so nothing is lost.
    pub fn modulate(&self, k: i64) -> Self {
        let truncation = self.truncation + k.unsigned_abs() as usize;
        let mut out = Self::zeros(truncation);
        for (n, c) in self.iter() {
            *out.get_mut(n + k).expect("enlarged truncation covers shift") = c;
        }
        out
    }

    /// Same coefficients embedded in (or cut down to) another truncation.
    pub fn retruncate(&self, truncation: usize) -> Self {
        Self::from_fn(truncation, |n| self.coeff_or_zero(n))
    }
}

/// A time-indexed sequence of fields on a common truncation, e.g. one
/// simulated trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPath {
    times: Vec<f64>,
    fields: Vec<SpectralField>,
}

impl FieldPath {
    /// Requires equal lengths, strictly increasing times starting at 0, and a
    /// common truncation.
    pub fn new(times: Vec<f64>, fields: Vec<SpectralField>) -> Result<Self> {
        if times.len() != fields.len() {
            return Err(LabError::Shape(format!(
                "{} times but {} fields",
                times.len(),
                fields.len()
            )));
        }
        if let Some(&t0) = times.first() {
            if t0 != 0.0 {
                return Err(LabError::InvalidParameter(format!("time grid must start at 0, got {t0}")));
            }
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(LabError::InvalidParameter("time grid must be strictly increasing".into()));
        }
        if let Some(first) = fields.first() {
            if fields.iter().any(|f| f.truncation() != first.truncation()) {
                return Err(LabError::Shape("fields along a path must share a truncation".into()));
            }
        }
        Ok(FieldPath { times, fields })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn fields(&self) -> &[SpectralField] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&SpectralField> {
        self.fields.last()
    }

    pub fn truncation(&self) -> usize {
        self.fields.first().map_or(0, |f| f.truncation())
    }
}

/// Initial data used by the experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialDatum {
    /// `u0(n) = exp(-delta a(n))` for `n != 0` and `u0(0) = 0`. For the second-order
    /// symbols this is `sum_{n != 0} e^{-delta n^2} e^{inx}`.
    GaussianWidth { delta: f64 },
    /// `amplitude * e^{i n x}`.
    SingleMode { n: i64, amplitude: [f64; 2] },
    /// Explicit coefficients.
    Coefficients(SpectralField),
}

impl InitialDatum {
    pub fn gaussian(delta: f64) -> Self {
        InitialDatum::GaussianWidth { delta }
    }

    pub fn single_mode(n: i64) -> Self {
        InitialDatum::SingleMode {
            n,
            amplitude: [1.0, 0.0],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InitialDatum::GaussianWidth { delta } if !(*delta > 0.0 && delta.is_finite()) => Err(
                LabError::InvalidParameter(format!("Gaussian width must be positive, got {delta}")),
            ),
            _ => Ok(()),
        }
    }

    /// Width `delta` of a Gaussian datum.
    pub fn gaussian_width(&self) -> Option<f64> {
        match self {
            InitialDatum::GaussianWidth { delta } => Some(*delta),
            _ => None,
        }
    }

    /// The datum at truncation `truncation`. Single modes outside the truncation
    /// are an error; explicit coefficients are embedded or cut.
    pub fn to_field(&self, symbols: &SpectralSymbols, truncation: usize) -> Result<SpectralField> {
        self.validate()?;
        match self {
            InitialDatum::GaussianWidth { delta } => Ok(SpectralField::from_fn(truncation, |n| {
                if n == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new((-delta * symbols.a(n)).exp(), 0.0)
                }
            })),
            InitialDatum::SingleMode { n, amplitude } => SpectralField::single_mode(
                truncation,
                *n,
                Complex64::new(amplitude[0], amplitude[1]),
            ),
            InitialDatum::Coefficients(field) => Ok(field.retruncate(truncation)),
        }
    }
}
