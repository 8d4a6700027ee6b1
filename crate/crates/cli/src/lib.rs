//! Config parsing, report encoding and mode dispatch behind the `maqa` binary.

pub mod config;
pub mod dataset;
mod error;
pub mod report;
pub mod run;

pub use config::{parse_config, parse_config_str, ExperimentConfig, Mode};
pub use error::CliError;
pub use run::{resolve_seed, run_command, RunOptions, RunOutcome, DEFAULT_TOLERANCE};
