//! Command-line frontend for the `chainent` library.
//!
//! A run is a [`RunConfig`] (from arguments or a JSON file) executed into a
//! [`Table`], written as CSV or JSON with a metadata sidecar.

pub mod commands;
pub mod config;
pub mod table;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

pub use commands::{execute, CommandError, Output};
pub use config::{parse_args, Command, OutputFormat, RunConfig, THREADS_ENV};
pub use table::{read_csv, Cell, CsvData, Table};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

/// Worker count: the config's, else the environment's, else rayon's default.
pub fn resolve_threads(cfg: &RunConfig) -> Result<usize, ConfigError> {
    if let Some(t) = cfg.threads {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(t),
            _ => Err(ConfigError(format!("{THREADS_ENV} must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(rayon::current_num_threads()),
    }
}

/// Result of a run with its timing.
#[derive(Debug, Clone)]
pub struct Run {
    pub output: Output,
    pub threads: usize,
    pub wall_clock_seconds: f64,
}

impl Run {
    /// The table in the configured format.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.output.table.to_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.output.table.to_json()).expect("table serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn metadata(&self, cfg: &RunConfig) -> Value {
        json!({
            "config": cfg.to_json(),
            "version": env!("CARGO_PKG_VERSION"),
            "threads": self.threads,
            "wall_clock_seconds": self.wall_clock_seconds,
            "rows": self.output.table.rows.len(),
            "row_errors": self.output.table.error_count(),
            "summary": self.output.summary,
        })
    }

    /// Every row failed, or there were none.
    pub fn total_failure(&self) -> bool {
        let t = &self.output.table;
        t.rows.is_empty() || t.error_count() == t.rows.len()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Command(#[from] CommandError),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// Runs `cfg` on a pool of the resolved size.
pub fn run(cfg: &RunConfig) -> Result<Run, RunError> {
    let threads = resolve_threads(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| RunError::Pool(e.to_string()))?;
    let start = Instant::now();
    let output = pool.install(|| execute(cfg))?;
    Ok(Run { output, threads, wall_clock_seconds: start.elapsed().as_secs_f64() })
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Writes the table to `cfg.out` with its sidecar, or the table to stdout.
pub fn write_outputs(cfg: &RunConfig, run: &Run) -> Result<(), RunError> {
    let body = run.render(cfg.output);
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|source| RunError::Io { path: path.clone(), source })?;
            let meta = sidecar_path(path);
            let mut text = serde_json::to_string_pretty(&run.metadata(cfg)).expect("metadata serializes");
            text.push('\n');
            std::fs::write(&meta, text).map_err(|source| RunError::Io { path: meta.clone(), source })?;
        }
        None => print!("{body}"),
    }
    Ok(())
}
