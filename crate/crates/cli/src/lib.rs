//! Library side of the `tensorlab` command: config validation, dispatch,
//! result records and output formats.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::time::{Instant, SystemTime};

pub use config::{CommandKind, ExperimentConfig, Format, OutputSpec, Params};
pub use error::CliError;
pub use output::{emit, ResultRecord};

use config::TerraciniMode;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs one experiment: validates, computes the payload, and appends the
/// rendered record to the configured output file. Returns the record and
/// its rendering.
pub fn execute(config: &ExperimentConfig) -> Result<(ResultRecord, String), CliError> {
    let valid = config.validate()?;
    let format = valid.echo.output.format;
    let cache = match (&valid.params, &valid.echo.output.path) {
        (Params::Terracini(p), Some(path)) if p.mode == TerraciniMode::Scan && format == Format::Json => {
            output::load_scan_cache(path, valid.echo.seed, p.trials)?
        }
        _ => Default::default(),
    };
    let start = Instant::now();
    let payload = commands::payload(&valid, &cache)?;
    let record = ResultRecord {
        tool: "tensorlab".into(),
        version: VERSION.into(),
        timestamp: humantime::format_rfc3339_seconds(SystemTime::now()).to_string(),
        wall_time_s: start.elapsed().as_secs_f64(),
        seed: valid.echo.seed,
        config: valid.echo.clone(),
        payload,
    };
    let text = emit(&record, format)?;
    if let Some(path) = &valid.echo.output.path {
        output::append(path, &text)?;
    }
    Ok((record, text))
}

/// The payload alone, serialized; identical across runs with the same
/// config, seed and version.
pub fn payload_json(config: &ExperimentConfig) -> Result<String, CliError> {
    let valid = config.validate()?;
    let payload = commands::payload(&valid, &Default::default())?;
    Ok(serde_json::to_string(&payload).expect("payloads serialize"))
}
