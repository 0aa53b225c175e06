use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use crate::experiment::config::ExperimentConfig;
use crate::experiment::output::{write_outputs, Manifest, OUT_DIR_ENV};
use crate::experiment::runner::{run_experiment, Status};
use crate::experiment::schema::CONFIG_SCHEMA;
use crate::experiment::ExperimentError;

pub const EXIT_OK: i32 = 0;
/// Invalid arguments or config, unreadable input, unwritable output.
pub const EXIT_USAGE: i32 = 2;
/// The run finished but some rows did not converge.
pub const EXIT_NONCONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "parabolic-lab", version, about = "Moments and multipliers for parabolic equations with transport noise")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Output directory; overrides the config and the PARABOLIC_LAB_OUT variable.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        threads: Option<usize>,
        /// Seed; overrides numerics.seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a config without running it.
    Validate { config: PathBuf },
    /// Print the JSON schema of the config format.
    Schema,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Schema => {
            println!("{CONFIG_SCHEMA}");
            EXIT_OK
        }
        Command::Validate { config } => match ExperimentConfig::load(&config) {
            Ok(c) => {
                println!("{}: valid {} config", config.display(), c.experiment.name());
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Command::Run {
            config,
            out,
            threads,
            seed,
        } => match run(&config, out, threads, seed) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
    }
}

fn run(path: &Path, out: Option<PathBuf>, threads: Option<usize>, seed: Option<u64>) -> Result<i32, ExperimentError> {
    let mut config = ExperimentConfig::load(path)?;
    if seed.is_some() {
        config.numerics.seed = seed;
        config.validate()?;
    }
    let out_dir = out
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| config.output.path.clone());
    let base = path.parent().unwrap_or(Path::new("."));

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = threads {
        if k == 0 {
            return Err(ExperimentError::Config("--threads must be positive".into()));
        }
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;

    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let clock = Instant::now();
    let table = pool.install(|| run_experiment(&config, base))?;
    let wall = clock.elapsed().as_secs_f64();

    let mut manifest = Manifest::new(&config, &table, pool.current_num_threads(), wall, started);
    let written = write_outputs(&out_dir, &table, config.output.format, &mut manifest)?;
    for p in &written {
        log::info!("wrote {}", p.display());
    }
    println!(
        "{}: {} rows ({} ok, {} diverged, {} nonconverged, {} heavy-tail) in {:.2}s -> {}",
        config.experiment.name(),
        table.rows.len(),
        manifest.ok,
        manifest.diverged,
        manifest.nonconverged,
        manifest.heavy_tail,
        wall,
        out_dir.display()
    );
    Ok(if table.count(Status::NonConverged) > 0 {
        EXIT_NONCONVERGED
    } else {
        EXIT_OK
    })
}
