//! The `nlslab` command line: config loading, experiment dispatch and
//! artifact output.

mod config;
mod run;

use std::path::PathBuf;

use clap::Parser;

pub use config::{
    set_key, Experiment, Format, OutputParams, RunConfig, SolverParams, SpectralParams, SweepParams,
    ENV_PREFIX,
};
pub use run::{
    execute, validate_manifest, Outcome, DIAGNOSTICS_CSV, FINAL_STATE, MANIFEST_JSON, PARTITION_JSON,
    REPORT_CSV, REPORT_JSON, U_PLUS_STATE,
};

use crate::error::Error;

/// Exit status when every declared band passes.
pub const EXIT_PASS: i32 = 0;
/// Exit status on errors; an error JSON is printed to stderr.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when the run finished but a declared band failed.
pub const EXIT_BAND_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nlslab", version, about = "Pseudo-spectral NLS laboratory")]
pub struct Args {
    /// TOML run configuration.
    #[arg(long, env = "NLSLAB_CONFIG")]
    pub config: PathBuf,
    /// Experiment to run, overriding the config.
    #[arg(long, value_enum)]
    pub experiment: Option<Experiment>,
    /// Output directory, overriding the config.
    #[arg(long, env = "NLSLAB_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, env = "NLSLAB_SEED")]
    pub seed: Option<u64>,
    /// Worker threads; all cores when absent.
    #[arg(long, env = "NLSLAB_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Dotted `key=value` override, e.g. `solver.dt=0.001`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub sets: Vec<String>,
}

impl Args {
    pub fn run_config(&self) -> Result<RunConfig, Error> {
        let mut sets = self.sets.clone();
        if let Some(e) = self.experiment {
            sets.push(format!("experiment=\"{}\"", e.name()));
        }
        if let Some(out) = &self.out {
            sets.push(format!("output.dir={}", toml::Value::String(out.display().to_string())));
        }
        if let Some(seed) = self.seed {
            sets.push(format!("seed={seed}"));
        }
        if let Some(f) = self.format {
            let name = match f {
                Format::Csv => "csv",
                Format::Json => "json",
                Format::Both => "both",
            };
            sets.push(format!("output.format=\"{name}\""));
        }
        RunConfig::load(&self.config, &sets)
    }
}

fn error_json(e: &Error) -> String {
    serde_json::json!({ "error": e.kind(), "message": e.to_string() }).to_string()
}

/// Runs the CLI and returns the process exit code.
pub fn main_with(args: Args) -> i32 {
    if let Some(w) = args.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("{}", error_json(&Error::Config(format!("worker pool: {e}"))));
            return EXIT_ERROR;
        }
    }
    let outcome = args.run_config().and_then(|cfg| execute(&cfg));
    match outcome {
        Ok(o) => {
            println!(
                "{}",
                serde_json::json!({
                    "experiment": o.experiment,
                    "pass": o.pass,
                    "outputs": o.outputs,
                })
            );
            if o.pass {
                EXIT_PASS
            } else {
                EXIT_BAND_FAIL
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            EXIT_ERROR
        }
    }
}
