//! `usc-spectra`: command-line driver for the `usc-core` library.
//!
//! Every mode produces its files in memory, so the bytes written depend only
//! on the configuration, never on thread count or timing.

pub mod config;
pub mod error;
pub mod format;
pub mod modes;
pub mod output;

use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

pub use config::{Cli, Format, Mode, RunConfig};
pub use error::{exit, CliError, Result};
pub use modes::{run_mode, ModeOutput};

use output::{json_bytes, Artifact};

/// `usc-spectra <version> (<git describe>)`.
pub const BUILD_ID: &str = concat!(
    "usc-spectra ",
    env!("CARGO_PKG_VERSION"),
    " (",
    env!("USC_GIT_DESCRIBE"),
    ")"
);

/// Result of a completed run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub written: Vec<String>,
    pub converged: bool,
    pub summary: Vec<String>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.converged {
            exit::OK
        } else {
            exit::NOT_CONVERGED
        }
    }
}

/// Runs the configured mode on a pool of `cfg.threads` workers and writes its
/// files plus the `run.json` record into `cfg.out`.
pub fn execute(cfg: &RunConfig) -> Result<RunOutcome> {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let out = pool.install(|| run_mode(cfg))?;

    let mut artifacts = out.artifacts;
    if cfg.wants(Format::Json) {
        let record = json!({
            "schema": 1,
            "build": BUILD_ID,
            "mode": cfg.mode().name(),
            "config": cfg,
            "outputs": artifacts.iter().map(|a| a.name.as_str()).collect::<Vec<_>>(),
            "converged": out.converged,
            "convergence": out.convergence,
        });
        artifacts.push(Artifact::new("run.json", json_bytes(&record)));
    }
    let elapsed = start.elapsed().as_secs_f64();
    if cfg.record_timing {
        artifacts.push(Artifact::new(
            "timing.json",
            json_bytes(&json!({ "wall_seconds": elapsed })),
        ));
    }
    write_all(&cfg.out, &artifacts)?;
    eprintln!("wall time: {elapsed:.3} s");
    Ok(RunOutcome {
        written: artifacts.into_iter().map(|a| a.name).collect(),
        converged: out.converged,
        summary: out.summary,
    })
}

fn write_all(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for a in artifacts {
        let path = dir.join(&a.name);
        std::fs::write(&path, &a.bytes).map_err(|e| CliError::io(&path, e))?;
    }
    Ok(())
}

/// Parses and resolves a command line without running it.
pub fn config_from_args<I, T>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args)
        .map_err(|e| CliError::Config(e.to_string()))?
        .resolve()
}

/// Full command-line entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit::INVALID_CONFIG
            } else {
                exit::OK
            };
        }
    };
    let result = cli.resolve().and_then(|cfg| execute(&cfg));
    match result {
        Ok(outcome) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
