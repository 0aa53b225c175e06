use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::experiment::ExperimentError;
use crate::spaces::NormSpec;
use crate::spectral::{
    InitialDatum, ModelParams, SpectralField, DEFAULT_TRUNCATION_FOURTH_ORDER,
    DEFAULT_TRUNCATION_SECOND_ORDER,
};

/// The experiments the runner knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    PhaseDiagram,
    BlowUpCurve,
    MomentVsTime,
    MultiplierReport,
    SchemeConvergence,
    FourthOrder,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::PhaseDiagram => "phase_diagram",
            ExperimentKind::BlowUpCurve => "blow_up_curve",
            ExperimentKind::MomentVsTime => "moment_vs_time",
            ExperimentKind::MultiplierReport => "multiplier_report",
            ExperimentKind::SchemeConvergence => "scheme_convergence",
            ExperimentKind::FourthOrder => "fourth_order",
        }
    }

    fn needs_times(&self) -> bool {
        matches!(
            self,
            ExperimentKind::MomentVsTime | ExperimentKind::MultiplierReport | ExperimentKind::FourthOrder
        )
    }
}

/// A swept value: a single number, an explicit list, or an inclusive
/// arithmetic range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamRange {
    Fixed(f64),
    List(Vec<f64>),
    Range(Span),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Span {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl ParamRange {
    /// The values in sweep order. Ranges include `stop` when it lies on the
    /// grid up to a relative slack of `1e-9` steps.
    pub fn values(&self) -> Vec<f64> {
        match self {
            ParamRange::Fixed(x) => vec![*x],
            ParamRange::List(xs) => xs.clone(),
            ParamRange::Range(Span { start, stop, step }) => {
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=count).map(|k| start + k as f64 * step).collect()
            }
        }
    }

    fn validate(&self, name: &str) -> Result<(), String> {
        match self {
            ParamRange::Fixed(x) if !x.is_finite() => Err(format!("{name}: value must be finite")),
            ParamRange::List(xs) if xs.is_empty() => Err(format!("{name}: list must not be empty")),
            ParamRange::List(xs) if xs.iter().any(|x| !x.is_finite()) => {
                Err(format!("{name}: list values must be finite"))
            }
            ParamRange::Range(s) if !(s.step > 0.0 && s.step.is_finite()) => {
                Err(format!("{name}: step must be positive, got {}", s.step))
            }
            ParamRange::Range(s) if !(s.start.is_finite() && s.stop.is_finite()) || s.stop < s.start => {
                Err(format!("{name}: need finite start <= stop"))
            }
            ParamRange::Range(s) if (s.stop - s.start) / s.step > 1e6 => {
                Err(format!("{name}: range has more than a million points"))
            }
            _ => Ok(()),
        }
    }
}

fn fixed(x: f64) -> ParamRange {
    ParamRange::Fixed(x)
}

fn default_q() -> ParamRange {
    fixed(2.0)
}

fn default_s() -> ParamRange {
    fixed(0.0)
}

/// Parameter sweeps; the runner takes the Cartesian product in the order
/// `alpha`, `beta`, `p`, `q`, `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamGrid {
    pub alpha: ParamRange,
    pub beta: ParamRange,
    pub p: ParamRange,
    #[serde(default = "default_q")]
    pub q: ParamRange,
    #[serde(default = "default_s")]
    pub s: ParamRange,
}

impl ParamGrid {
    pub fn cells(&self) -> Result<Vec<ModelParams>, String> {
        let mut out = Vec::new();
        for alpha in self.alpha.values() {
            for beta in self.beta.values() {
                for p in self.p.values() {
                    for q in self.q.values() {
                        for s in self.s.values() {
                            out.push(ModelParams::new(alpha, beta, p, q, s).map_err(|e| e.to_string())?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Initial data as written in a config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    GaussianWidth { delta: f64 },
    SingleMode { n: i64 },
    /// JSON file `{"truncation": N, "coeffs": [[re, im], ...]}` listing modes `-N..=N`.
    CustomCoeffFile { path: PathBuf },
}

impl Default for InitialSpec {
    fn default() -> Self {
        InitialSpec::GaussianWidth { delta: 1.0 }
    }
}

impl InitialSpec {
    /// Resolves the datum; relative coefficient paths are taken from `base`.
    pub fn resolve(&self, base: &Path) -> Result<InitialDatum, ExperimentError> {
        match self {
            InitialSpec::GaussianWidth { delta } => {
                let d = InitialDatum::gaussian(*delta);
                d.validate().map_err(|e| ExperimentError::Config(e.to_string()))?;
                Ok(d)
            }
            InitialSpec::SingleMode { n } => Ok(InitialDatum::single_mode(*n)),
            InitialSpec::CustomCoeffFile { path } => {
                let full = if path.is_absolute() { path.clone() } else { base.join(path) };
                let text = fs::read_to_string(&full)
                    .map_err(|e| ExperimentError::Config(format!("{}: {e}", full.display())))?;
                let field: SpectralField = serde_json::from_str(&text)
                    .map_err(|e| ExperimentError::Config(format!("{}: {e}", full.display())))?;
                SpectralField::new(field.truncation(), field.coeffs().to_vec())
                    .map_err(|e| ExperimentError::Config(format!("{}: {e}", full.display())))?;
                Ok(InitialDatum::Coefficients(field))
            }
        }
    }
}

/// Numerical settings; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    /// Fourier truncation `N`; defaults to 256 (second order) or 64 (fourth order).
    #[serde(default, rename = "N", alias = "truncation", skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    /// Time panels for time-integrated moments and the interpolation norm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_nodes: Option<usize>,
    /// Monte Carlo paths; 0 disables Monte Carlo columns.
    #[serde(default)]
    pub paths: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Splitting parameter for the multiplier factorisation; defaults to a
    /// quarter of the slack `1 - 2 alpha^2 - 2 beta^2 (p-1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Values of `W(t)` for the multiplier report; defaults to `[0]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_values: Option<ParamRange>,
    /// Random trial polynomials per multiplier.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Horizon of the scheme-convergence runs; defaults to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    /// Coarsest and finest dyadic level `L` with `dt = horizon 2^{-L}`; defaults to `[7, 12]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<[u32; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    /// CSV plus a JSON mirror of the same table.
    CsvJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_out")]
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_out() -> PathBuf {
    PathBuf::from("results")
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            path: default_out(),
            format: OutputFormat::Csv,
        }
    }
}

/// One experiment run, as read from a JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub params: ParamGrid,
    #[serde(default)]
    pub initial: InitialSpec,
    /// Norm of the moments; defaults to the Bessel norm `H^{s,q}` of each cell.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
    /// Evaluation times for time-resolved experiments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<ParamRange>,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub output: OutputSpec,
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<Self, ExperimentError> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ExperimentError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let invalid = |msg: String| Err(ExperimentError::Config(msg));
        for (name, range) in [
            ("params.alpha", &self.params.alpha),
            ("params.beta", &self.params.beta),
            ("params.p", &self.params.p),
            ("params.q", &self.params.q),
            ("params.s", &self.params.s),
        ] {
            range.validate(name).map_err(ExperimentError::Config)?;
        }
        self.params.cells().map_err(ExperimentError::Config)?;
        if let Some(t) = &self.times {
            t.validate("times").map_err(ExperimentError::Config)?;
            if t.values().iter().any(|&x| x < 0.0) {
                return invalid("times must be non-negative".into());
            }
        } else if self.experiment.needs_times() {
            return invalid(format!("experiment '{}' needs 'times'", self.experiment.name()));
        }
        if let Some(w) = &self.numerics.noise_values {
            w.validate("numerics.noise_values").map_err(ExperimentError::Config)?;
        }
        let n = &self.numerics;
        if n.paths > 0 && n.seed.is_none() {
            return invalid("numerics.seed is required when numerics.paths > 0".into());
        }
        if n.truncation == Some(0) {
            return invalid("numerics.N must be positive".into());
        }
        if let Some(eps) = n.eps {
            if !(eps > 0.0 && eps < 0.5) {
                return invalid(format!("numerics.eps must lie in (0, 1/2), got {eps}"));
            }
        }
        if let Some(h) = n.horizon {
            if !(h > 0.0 && h.is_finite()) {
                return invalid(format!("numerics.horizon must be positive, got {h}"));
            }
        }
        if let Some([lo, hi]) = n.levels {
            if lo > hi || hi > 20 {
                return invalid(format!("numerics.levels must satisfy lo <= hi <= 20, got [{lo}, {hi}]"));
            }
        }
        if let InitialSpec::GaussianWidth { delta } = self.initial {
            if !(delta > 0.0 && delta.is_finite()) {
                return invalid(format!("initial.gaussian_width.delta must be positive, got {delta}"));
            }
        }
        match self.experiment {
            ExperimentKind::BlowUpCurve if !matches!(self.initial, InitialSpec::GaussianWidth { .. }) => {
                invalid("blow_up_curve needs a gaussian_width initial datum".into())
            }
            ExperimentKind::SchemeConvergence if n.paths == 0 => {
                invalid("scheme_convergence needs numerics.paths > 0".into())
            }
            _ => Ok(()),
        }
    }

    /// Truncation used for this experiment.
    pub fn truncation(&self) -> usize {
        self.numerics.truncation.unwrap_or(match self.experiment {
            ExperimentKind::FourthOrder => DEFAULT_TRUNCATION_FOURTH_ORDER,
            ExperimentKind::SchemeConvergence => 8,
            _ => DEFAULT_TRUNCATION_SECOND_ORDER,
        })
    }

    pub fn times(&self) -> Vec<f64> {
        self.times.as_ref().map(ParamRange::values).unwrap_or_default()
    }

    /// Norm for a parameter cell.
    pub fn norm_for(&self, params: &ModelParams) -> NormSpec {
        let mut spec = self
            .norm
            .clone()
            .unwrap_or_else(|| NormSpec::bessel(params.s, params.q));
        if spec.grid_points.is_none() {
            spec.grid_points = self.numerics.grid_points;
        }
        spec
    }
}
