//! Runs an experiment config in-process and prints the resulting table.

use std::path::Path;

use parabolic_lab::experiment::{run_experiment, ExperimentConfig, ExperimentError, Table};

pub fn run_example() -> Result<Table, ExperimentError> {
    let config = ExperimentConfig::from_json_str(
        r#"{
            "experiment": "moment_vs_time",
            "params": {"alpha": 0.1, "beta": [0.3, 0.8], "p": 2},
            "times": {"start": 0.0, "stop": 1.5, "step": 0.5},
            "numerics": {"N": 32}
        }"#,
    )?;
    let table = run_experiment(&config, Path::new("."))?;
    println!("{},status", table.columns.join(","));
    for (row, status) in table.rows.iter().zip(&table.statuses) {
        let cells: Vec<String> = row.iter().map(|v| v.to_csv()).collect();
        println!("{},{}", cells.join(","), status.as_str());
    }
    Ok(table)
}

fn main() -> Result<(), ExperimentError> {
    run_example().map(|_| ())
}
