//! Command-line surface over `dasym-core`: subcommand implementations,
//! bundled fixtures and the acceptance runner.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod error;
pub mod fixtures;

pub use config::{OutputFormat, RunConfig};
pub use error::{CliError, CliResult};
