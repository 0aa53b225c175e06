use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{LabError, Result};

/// One scalar Brownian path on a grid starting at 0. Path `index` of a given
/// `seed` always draws from the same ChaCha stream, so any subset of paths can
/// be regenerated bit for bit in any order.
#[derive(Debug, Clone, PartialEq)]
pub struct BrownianPath {
    times: Vec<f64>,
    increments: Vec<f64>,
    values: Vec<f64>,
    seed: u64,
    index: u64,
}

/// Generator keyed by `(seed, index)`.
pub fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

impl BrownianPath {
    /// `steps` equal steps on `[0, horizon]`.
    pub fn uniform(horizon: f64, steps: usize, seed: u64, index: u64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) || steps == 0 {
            return Err(LabError::InvalidParameter(format!(
                "need a positive horizon and at least one step, got T = {horizon}, steps = {steps}"
            )));
        }
        let dt = horizon / steps as f64;
        let times: Vec<f64> = (0..=steps).map(|k| horizon * k as f64 / steps as f64).collect();
        let mut rng = path_rng(seed, index);
        let sd = dt.sqrt();
        let increments = (0..steps)
            .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
            .collect();
        Ok(Self::assemble(times, increments, seed, index))
    }

    /// A path from explicit increments on an explicit grid.
    pub fn from_increments(times: Vec<f64>, increments: Vec<f64>) -> Result<Self> {
        if times.first() != Some(&0.0) || times.len() != increments.len() + 1 {
            return Err(LabError::Shape(format!(
                "grid must start at 0 and have one more point ({}) than increments ({})",
                times.len(),
                increments.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(LabError::Shape("time grid must be strictly increasing".into()));
        }
        Ok(Self::assemble(times, increments, 0, 0))
    }

    fn assemble(times: Vec<f64>, increments: Vec<f64>, seed: u64, index: u64) -> Self {
        let mut values = Vec::with_capacity(times.len());
        let mut w = 0.0;
        values.push(w);
        for dw in &increments {
            w += dw;
            values.push(w);
        }
        BrownianPath {
            times,
            increments,
            values,
            seed,
            index,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    /// `W(t_k)` at every grid time, starting with `W(0) = 0`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn steps(&self) -> usize {
        self.increments.len()
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("grid is never empty")
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().expect("grid is never empty")
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Largest step size.
    pub fn max_dt(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// The same path on every `factor`-th grid point, with increments summed.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || !self.steps().is_multiple_of(factor) {
            return Err(LabError::Shape(format!(
                "cannot coarsen {} steps by a factor of {factor}",
                self.steps()
            )));
        }
        let times = self.times.iter().step_by(factor).copied().collect();
        let increments = self
            .increments
            .chunks(factor)
            .map(|c| c.iter().sum())
            .collect();
        Ok(Self::assemble(times, increments, self.seed, self.index))
    }
}
