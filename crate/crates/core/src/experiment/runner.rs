use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::LabError;
use crate::experiment::config::{ExperimentConfig, ExperimentKind, ParamRange};
use crate::experiment::ExperimentError;
use crate::moments::{divergence_time, MomentEstimate, MomentProblem};
use crate::multiplier::{
    empirical_mq_norm, factorised_multipliers, marcinkiewicz_constant, zeta_level_bound, zeta_symbol,
    PhaseConvention, DEFAULT_MAX_LEVEL,
};
use crate::paths::{
    monte_carlo_moment, simulate_path, strong_solution_residual, BrownianPath, SchemeKind,
};
use crate::spaces::{sobolev_norm_sq, NormSpec};
use crate::spectral::{
    blow_up_time, classical_condition, lp_condition, split_conditions, InitialDatum, ModelParams, Order,
    SpectralSymbols,
};

/// Per-row outcome, written as the last CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "diverged")]
    Diverged,
    #[serde(rename = "nonconverged")]
    NonConverged,
    #[serde(rename = "heavy-tail")]
    HeavyTail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Diverged => "diverged",
            Status::NonConverged => "nonconverged",
            Status::HeavyTail => "heavy-tail",
        }
    }
}

/// A table cell. Infinite numbers are written as `inf`, missing values as an
/// empty field.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Value {
    pub fn to_csv(&self) -> String {
        match self {
            Value::Num(x) if x.is_nan() => String::new(),
            Value::Num(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.to_string(),
            Value::Num(x) if *x != 0.0 && !(1e-4..1e15).contains(&x.abs()) => format!("{x:e}"),
            Value::Num(x) => x.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Num(x) if x.is_finite() => serde_json::json!(x),
            Value::Num(x) if x.is_nan() => serde_json::Value::Null,
            Value::Num(_) => serde_json::Value::String(self.to_csv()),
            Value::Int(i) => serde_json::json!(i),
            Value::Bool(b) => serde_json::json!(b),
            Value::Text(s) => serde_json::json!(s),
            Value::Empty => serde_json::Value::Null,
        }
    }

    fn opt(x: Option<f64>) -> Value {
        x.map(Value::Num).unwrap_or(Value::Empty)
    }
}

/// Result of one run: a header and rows in sweep order. `status` is not part
/// of `columns`; writers append it.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub experiment: ExperimentKind,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub statuses: Vec<Status>,
}

impl Table {
    pub fn count(&self, status: Status) -> usize {
        self.statuses.iter().filter(|s| **s == status).count()
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

type Row = (Vec<Value>, Status);

const PARAM_COLUMNS: [&str; 5] = ["alpha", "beta", "p", "q", "s"];

fn param_values(p: &ModelParams) -> Vec<Value> {
    vec![
        Value::Num(p.alpha),
        Value::Num(p.beta),
        Value::Num(p.p),
        Value::Num(p.q),
        Value::Num(p.s),
    ]
}

fn columns(extra: &[&'static str]) -> Vec<&'static str> {
    PARAM_COLUMNS.iter().chain(extra).copied().collect()
}

/// Evaluates every cell of the configured sweep. Relative coefficient-file
/// paths are resolved against `base_dir`.
pub fn run_experiment(config: &ExperimentConfig, base_dir: &Path) -> Result<Table, ExperimentError> {
    config.validate()?;
    let initial = config.initial.resolve(base_dir)?;
    let cells = config.params.cells().map_err(ExperimentError::Config)?;
    let (extra, rows): (&[&'static str], Vec<Row>) = match config.experiment {
        ExperimentKind::PhaseDiagram => (PHASE_COLUMNS, phase_diagram(&cells, &initial)),
        ExperimentKind::BlowUpCurve => (BLOW_UP_COLUMNS, blow_up_curve(config, &cells, &initial)?),
        ExperimentKind::MomentVsTime => (MOMENT_COLUMNS, moment_vs_time(config, &cells, &initial)?),
        ExperimentKind::MultiplierReport => (MULTIPLIER_COLUMNS, multiplier_report(config, &cells)?),
        ExperimentKind::SchemeConvergence => (SCHEME_COLUMNS, scheme_convergence(config, &cells, &initial)?),
        ExperimentKind::FourthOrder => (FOURTH_COLUMNS, fourth_order(config, &cells, &initial)?),
    };
    let (rows, statuses) = rows.into_iter().unzip();
    Ok(Table {
        experiment: config.experiment,
        columns: columns(extra),
        rows,
        statuses,
    })
}

/// Splits a per-cell result into rows, turning quadrature failures into
/// `nonconverged` rows and passing other errors up.
fn flatten(results: Vec<Result<Vec<Row>, LabError>>) -> Result<Vec<Row>, ExperimentError> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn nonconverged(prefix: Vec<Value>, width: usize) -> Row {
    let mut values = prefix;
    values.resize(PARAM_COLUMNS.len() + width, Value::Empty);
    (values, Status::NonConverged)
}

const PHASE_COLUMNS: &[&str] = &[
    "classical",
    "lp",
    "lp_margin",
    "parabolicity",
    "integrability",
    "tau",
];

fn phase_diagram(cells: &[ModelParams], initial: &InitialDatum) -> Vec<Row> {
    cells
        .iter()
        .map(|params| {
            let split = split_conditions(params);
            let lp = lp_condition(params);
            let mut v = param_values(params);
            v.extend([
                Value::Bool(classical_condition(params).holds),
                Value::Bool(lp.holds),
                Value::Num(lp.margin),
                Value::Bool(split.parabolicity),
                split.integrability.map(Value::Bool).unwrap_or(Value::Empty),
                Value::opt(initial.gaussian_width().map(|d| blow_up_time(params, d))),
            ]);
            (v, Status::Ok)
        })
        .collect()
}

const BLOW_UP_COLUMNS: &[&str] = &[
    "delta",
    "tau_formula",
    "tau_bisection",
    "relative_gap",
    "moment_below",
    "moment_above",
];

/// Fraction of `tau` at which the moment is probed on either side.
const BLOW_UP_PROBE: f64 = 0.1;

fn blow_up_curve(
    config: &ExperimentConfig,
    cells: &[ModelParams],
    initial: &InitialDatum,
) -> Result<Vec<Row>, ExperimentError> {
    let delta = initial.gaussian_width().expect("validated gaussian datum");
    let results: Vec<_> = cells
        .par_iter()
        .map(|params| -> Result<Vec<Row>, LabError> {
            let formula = blow_up_time(params, delta);
            let bisection = divergence_time(params.alpha, params.beta, params.p, delta);
            let gap = if formula.is_finite() {
                (bisection - formula).abs() / formula
            } else if bisection.is_infinite() {
                0.0
            } else {
                f64::INFINITY
            };
            let mut v = param_values(params);
            v.extend([Value::Num(delta), Value::Num(formula), Value::Num(bisection), Value::Num(gap)]);
            if !formula.is_finite() {
                v.extend([Value::Empty, Value::Empty]);
                return Ok(vec![(v, Status::Ok)]);
            }
            let problem = MomentProblem::second_order(
                *params,
                initial.clone(),
                config.norm_for(params),
                config.truncation(),
            )?;
            let below = problem.expected_norm_p((1.0 - BLOW_UP_PROBE) * formula);
            let above = problem.expected_norm_p((1.0 + BLOW_UP_PROBE) * formula);
            match (below, above) {
                (Ok(b), Ok(a)) => {
                    v.extend([Value::Num(b.value), Value::Num(a.value)]);
                    let status = if b.is_finite() && !a.is_finite() { Status::Ok } else { Status::Diverged };
                    Ok(vec![(v, status)])
                }
                (Err(LabError::NonConvergence(_)), _) | (_, Err(LabError::NonConvergence(_))) => {
                    Ok(vec![nonconverged(v, BLOW_UP_COLUMNS.len())])
                }
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        })
        .collect();
    flatten(results)
}

const MOMENT_COLUMNS: &[&str] = &[
    "t",
    "tau",
    "moment",
    "moment_root",
    "method",
    "quad_nodes",
    "error_indicator",
    "mc_estimate",
    "mc_ci95",
    "mc_excess_kurtosis",
];

fn moment_values(est: &MomentEstimate, p: f64) -> [Value; 5] {
    [
        Value::Num(est.value),
        Value::Num(est.value.powf(1.0 / p)),
        Value::Text(
            serde_json::to_value(est.method)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        ),
        Value::Int(est.quad_nodes as i64),
        Value::Num(est.error_indicator),
    ]
}

fn moment_vs_time(
    config: &ExperimentConfig,
    cells: &[ModelParams],
    initial: &InitialDatum,
) -> Result<Vec<Row>, ExperimentError> {
    let times = config.times();
    let problems = cells
        .iter()
        .map(|params| {
            MomentProblem::second_order(*params, initial.clone(), config.norm_for(params), config.truncation())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(usize, f64)> = (0..cells.len())
        .flat_map(|c| times.iter().map(move |&t| (c, t)))
        .collect();
    let paths = config.numerics.paths;
    let seed = config.numerics.seed.unwrap_or(0);
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(c, t)| -> Result<Vec<Row>, LabError> {
            let problem = &problems[c];
            let mut v = param_values(&problem.params);
            v.extend([Value::Num(t), Value::Num(problem.divergence_time())]);
            let est = match problem.expected_norm_p(t) {
                Ok(e) => e,
                Err(LabError::NonConvergence(_)) => return Ok(vec![nonconverged(v, MOMENT_COLUMNS.len())]),
                Err(e) => return Err(e),
            };
            v.extend(moment_values(&est, problem.params.p));
            let mut status = if est.is_finite() { Status::Ok } else { Status::Diverged };
            if paths > 0 && est.is_finite() && t > 0.0 {
                let mc = monte_carlo_moment(problem, t, paths, seed)?;
                v.extend([Value::Num(mc.estimate), Value::Num(mc.ci95), Value::Num(mc.excess_kurtosis)]);
                if mc.heavy_tail {
                    status = Status::HeavyTail;
                }
            } else {
                v.extend([Value::Empty, Value::Empty, Value::Empty]);
            }
            Ok(vec![(v, status)])
        })
        .collect();
    flatten(results)
}

const MULTIPLIER_COLUMNS: &[&str] = &[
    "t",
    "w",
    "eps",
    "f",
    "g",
    "r",
    "h",
    "k_m1",
    "k_m3",
    "k_zeta",
    "zeta_bound",
    "empirical_m1m2",
];

const DEFAULT_TRIALS: usize = 8;
/// Largest truncation used for the empirical operator norm.
const EMPIRICAL_TRUNCATION_CAP: usize = 128;

fn multiplier_report(config: &ExperimentConfig, cells: &[ModelParams]) -> Result<Vec<Row>, ExperimentError> {
    let times = config.times();
    if times.iter().any(|&t| t <= 0.0) {
        return Err(ExperimentError::Config("multiplier_report needs times > 0".into()));
    }
    let noise = config
        .numerics
        .noise_values
        .clone()
        .unwrap_or(ParamRange::Fixed(0.0))
        .values();
    let mut jobs: Vec<(ModelParams, f64, f64)> = Vec::new();
    for c in cells {
        for &t in &times {
            for &w in &noise {
                jobs.push((*c, t, w));
            }
        }
    }
    let trials = config.numerics.trials.unwrap_or(DEFAULT_TRIALS);
    let truncation = config.truncation().min(EMPIRICAL_TRUNCATION_CAP);
    let seed = config.numerics.seed.unwrap_or(0);
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(params, t, w)| -> Result<Vec<Row>, LabError> {
            let mut v = param_values(params);
            v.extend([Value::Num(*t), Value::Num(*w)]);
            let slack = 1.0 - params.lp_lhs();
            let eps = config.numerics.eps.unwrap_or(0.25 * slack);
            if !(slack > 0.0 && params.lp_lhs() < 1.0 - 2.0 * eps) {
                v.push(Value::Num(eps));
                v.resize(PARAM_COLUMNS.len() + MULTIPLIER_COLUMNS.len(), Value::Empty);
                return Ok(vec![(v, Status::Diverged)]);
            }
            let fm = factorised_multipliers(*t, *w, params, eps)?;
            let k1 = marcinkiewicz_constant(&fm.m1, DEFAULT_MAX_LEVEL)?;
            let k3 = marcinkiewicz_constant(&fm.m3, DEFAULT_MAX_LEVEL)?;
            let zeta = zeta_symbol(*t, params.alpha, params.beta, eps, PhaseConvention::Exact);
            let kz = marcinkiewicz_constant(&zeta, DEFAULT_MAX_LEVEL)?;
            let empirical = empirical_mq_norm(&fm.m1.product(&fm.m2), params.q, trials, truncation, seed)?;
            v.extend([
                Value::Num(eps),
                Value::Num(fm.f),
                Value::Num(fm.shift),
                Value::Num(fm.fractional_shift),
                Value::Num(fm.h),
                Value::Num(k1.k),
                Value::Num(k3.k),
                Value::Num(kz.k),
                Value::Num(zeta_level_bound(params.alpha, params.beta, eps)),
                Value::Num(empirical),
            ]);
            Ok(vec![(v, Status::Ok)])
        })
        .collect();
    flatten(results)
}

const SCHEME_COLUMNS: &[&str] = &["level", "dt", "em_error", "exact_residual", "fitted_slope"];

const DEFAULT_LEVELS: [u32; 2] = [7, 12];

fn scheme_convergence(
    config: &ExperimentConfig,
    cells: &[ModelParams],
    initial: &InitialDatum,
) -> Result<Vec<Row>, ExperimentError> {
    let horizon = config.numerics.horizon.unwrap_or(1.0);
    let [lo, hi] = config.numerics.levels.unwrap_or(DEFAULT_LEVELS);
    let truncation = config.truncation();
    let paths = config.numerics.paths;
    let seed = config.numerics.seed.unwrap_or(0);
    let coarsest_dt = horizon / 2f64.powi(lo as i32);
    let l2 = NormSpec::bessel(0.0, 2.0);

    let mut rows = Vec::new();
    for params in cells {
        let symbols = SpectralSymbols::second_order(params);
        let guard = coarsest_dt * symbols.max_drift(truncation);
        if guard > crate::paths::EULER_STABILITY_LIMIT {
            return Err(ExperimentError::Config(format!(
                "Euler-Maruyama guard: dt * max a(n) = {guard} > 1/2 at level {lo}; lower N or raise the coarsest level"
            )));
        }
        let u0 = initial.to_field(&symbols, truncation)?;
        let per_path = (0..paths as u64)
            .into_par_iter()
            .map(|i| -> Result<Vec<(f64, f64)>, LabError> {
                let fine = BrownianPath::uniform(horizon, 1usize << hi, seed, i)?;
                (lo..=hi)
                    .map(|level| {
                        let path = fine.coarsen(1usize << (hi - level))?;
                        let em = simulate_path(&path, SchemeKind::EulerMaruyama, &symbols, &u0)?;
                        let exact = simulate_path(&path, SchemeKind::ExactExponential, &symbols, &u0)?;
                        let diff = em.last().expect("non-empty").sub(exact.last().expect("non-empty"))?;
                        let residual = strong_solution_residual(&path, &exact, &symbols, &l2)?.relative();
                        Ok((sobolev_norm_sq(&diff, 0.0).sqrt(), residual))
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let levels: Vec<u32> = (lo..=hi).collect();
        let n = paths as f64;
        let means: Vec<(f64, f64)> = (0..levels.len())
            .map(|k| {
                let e = per_path.iter().map(|p| p[k].0).sum::<f64>() / n;
                let r = per_path.iter().map(|p| p[k].1).sum::<f64>() / n;
                (e, r)
            })
            .collect();
        let dts: Vec<f64> = levels.iter().map(|&l| horizon / 2f64.powi(l as i32)).collect();
        let slope = log_log_slope(&dts, &means.iter().map(|m| m.0).collect::<Vec<_>>());
        for (k, level) in levels.iter().enumerate() {
            let mut v = param_values(params);
            v.extend([
                Value::Int(*level as i64),
                Value::Num(dts[k]),
                Value::Num(means[k].0),
                Value::Num(means[k].1),
                Value::opt(slope),
            ]);
            let status = if means[k].0.is_finite() { Status::Ok } else { Status::Diverged };
            rows.push((v, status));
        }
    }
    Ok(rows)
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// usable points.
pub(crate) fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0 && b.is_finite())
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

const FOURTH_COLUMNS: &[&str] = &["t", "tau", "moment", "method", "time_integrated"];

const DEFAULT_TIME_PANELS: usize = 32;

fn fourth_order(
    config: &ExperimentConfig,
    cells: &[ModelParams],
    initial: &InitialDatum,
) -> Result<Vec<Row>, ExperimentError> {
    let times = config.times();
    let panels = config.numerics.quad_nodes.unwrap_or(DEFAULT_TIME_PANELS);
    let problems = cells
        .iter()
        .map(|params| {
            let symbols = SpectralSymbols::structured(Order::Fourth, params.alpha, params.beta);
            MomentProblem::new(*params, symbols, initial.clone(), config.norm_for(params), config.truncation())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(usize, f64)> = (0..cells.len())
        .flat_map(|c| times.iter().map(move |&t| (c, t)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(c, t)| -> Result<Vec<Row>, LabError> {
            let problem = &problems[c];
            let mut v = param_values(&problem.params);
            v.extend([Value::Num(t), Value::Num(problem.divergence_time())]);
            let computed = problem.expected_norm_p(t).and_then(|est| {
                let integrated = if t > 0.0 { problem.time_integrated_moment(t, panels)? } else { 0.0 };
                Ok((est, integrated))
            });
            let (est, integrated) = match computed {
                Ok(x) => x,
                Err(LabError::NonConvergence(_)) => return Ok(vec![nonconverged(v, FOURTH_COLUMNS.len())]),
                Err(e) => return Err(e),
            };
            let [moment, _, method, _, _] = moment_values(&est, problem.params.p);
            v.extend([moment, method, Value::Num(integrated)]);
            let status = if est.is_finite() && integrated.is_finite() { Status::Ok } else { Status::Diverged };
            Ok(vec![(v, status)])
        })
        .collect();
    flatten(results)
}
