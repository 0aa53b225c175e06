use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_parabolic-lab");

fn lab(args: &[&str], env_out: Option<&Path>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("PARABOLIC_LAB_OUT");
    if let Some(dir) = env_out {
        cmd.env("PARABOLIC_LAB_OUT", dir);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const MOMENTS: &str = r#"{
    "experiment": "moment_vs_time",
    "params": {"alpha": [0.1, 0.2], "beta": 0.3, "p": 2},
    "times": [0.0, 0.5, 1.0],
    "numerics": {"N": 16, "paths": 200, "seed": 1},
    "output": {"path": "unused", "format": "csv_json"}
}"#;

#[test]
fn schema_prints_json() {
    let out = lab(&["schema"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["required"], serde_json::json!(["experiment", "params"]));
}

#[test]
fn validate_accepts_good_and_rejects_bad_configs() {
    let dir = TempDir::new().unwrap();
    let good = write_config(dir.path(), "good.json", MOMENTS);
    assert_eq!(lab(&["validate", good.to_str().unwrap()], None).status.code(), Some(0));

    let bad = write_config(dir.path(), "bad.json", &MOMENTS.replace("\"seed\": 1", "\"seed\": 1, \"sede\": 2"));
    let out = lab(&["validate", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sede"));

    let missing = dir.path().join("missing.json");
    assert_eq!(lab(&["validate", missing.to_str().unwrap()], None).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn shipped_configs_validate() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in fs::read_dir(&configs).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        if !text.contains("\"experiment\"") {
            continue;
        }
        let out = lab(&["validate", path.to_str().unwrap()], None);
        assert!(out.status.success(), "{}: {}", path.display(), String::from_utf8_lossy(&out.stderr));
        seen += 1;
    }
    assert!(seen >= 6);
}

#[test]
fn run_writes_table_mirror_and_manifest() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "m.json", MOMENTS);
    let out_dir = dir.path().join("out");
    let out = lab(
        &["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--seed", "42"],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let mut reader = csv::Reader::from_path(out_dir.join("moment_vs_time.csv")).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header.first().map(String::as_str), Some("alpha"));
    assert_eq!(header.last().map(String::as_str), Some("status"));
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("moment_vs_time.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 6);

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 42);
    assert_eq!(manifest["config"]["numerics"]["seed"], 42);
    assert_eq!(manifest["rows"], 6);
    assert!(manifest["crate_version"].is_string());
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn env_var_sets_output_and_flag_overrides_it() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "m.json", MOMENTS);
    let env_dir = dir.path().join("from_env");
    let flag_dir = dir.path().join("from_flag");

    assert!(lab(&["run", cfg.to_str().unwrap()], Some(&env_dir)).status.success());
    assert!(env_dir.join("manifest.json").exists());

    let out = lab(&["run", cfg.to_str().unwrap(), "--out", flag_dir.to_str().unwrap()], Some(&env_dir));
    assert!(out.status.success());
    assert!(flag_dir.join("moment_vs_time.csv").exists());
}

#[test]
fn thread_count_does_not_change_the_table() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "m.json", MOMENTS);
    let mut tables = Vec::new();
    for threads in ["1", "4"] {
        let out_dir = dir.path().join(format!("t{threads}"));
        let out = lab(
            &["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--threads", threads],
            None,
        );
        assert!(out.status.success());
        tables.push(fs::read_to_string(out_dir.join("moment_vs_time.csv")).unwrap());
    }
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn near_critical_time_exits_with_nonconvergence() {
    // tau = 1 for alpha = 0, beta = 1, p = 2, delta = 1; the tail coefficient
    // at 1 - 1e-13 is about -1e-14.
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "crit.json",
        r#"{"experiment": "moment_vs_time",
            "params": {"alpha": 0.0, "beta": 1.0, "p": 2},
            "times": [0.5, 0.9999999999999],
            "numerics": {"N": 16}}"#,
    );
    let out_dir = dir.path().join("out");
    let out = lab(&["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3));
    let text = fs::read_to_string(out_dir.join("moment_vs_time.csv")).unwrap();
    let statuses: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(statuses, vec!["ok", "nonconverged"]);
}

#[test]
fn unwritable_output_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "m.json", MOMENTS);
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = lab(&["run", cfg.to_str().unwrap(), "--out", blocker.join("sub").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_coefficient_file_resolves_relative_to_config() {
    let dir = TempDir::new().unwrap();
    write_config(
        dir.path(),
        "coeffs.json",
        r#"{"truncation": 1, "coeffs": [[0.5, 0.0], [1.0, 0.0], [0.5, 0.0]]}"#,
    );
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"experiment": "moment_vs_time",
            "params": {"alpha": 0.0, "beta": 0.0, "p": 2},
            "initial": {"custom_coeff_file": {"path": "coeffs.json"}},
            "times": [0.0], "numerics": {"N": 4}}"#,
    );
    let out_dir = dir.path().join("out");
    let out = lab(&["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(out_dir.join("moment_vs_time.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    let row = reader.records().next().unwrap().unwrap();
    let moment: f64 = row[headers.iter().position(|h| h == "moment").unwrap()].parse().unwrap();
    // ||u0||_{L^2}^2 = 2 pi (1 + 0.25 + 0.25)
    assert!((moment - 3.0 * std::f64::consts::PI).abs() < 1e-12, "{moment}");
}
