//! Config-driven experiment runs: JSON config in, CSV table and manifest out.
//!
//! Each experiment expands its parameter sweep into cells, evaluates the
//! cells in parallel and writes them back in sweep order, so the output does
//! not depend on the thread count.

mod cli;
mod config;
mod output;
mod runner;
mod schema;

use thiserror::Error;

use crate::error::LabError;

pub use cli::{cli_main, Cli, Command, EXIT_NONCONVERGED, EXIT_OK, EXIT_USAGE};
pub use config::{
    ExperimentConfig, ExperimentKind, InitialSpec, Numerics, OutputFormat, OutputSpec, ParamGrid, ParamRange, Span,
};
pub use output::{write_outputs, Manifest, OUT_DIR_ENV};
pub use runner::{run_experiment, Status, Table, Value};
pub use schema::CONFIG_SCHEMA;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Numerical(#[from] LabError),
}
