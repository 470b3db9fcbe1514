//! Library side of the `ptlat` command-line tool: config parsing, command
//! dispatch and the CSV, JSON and SVG writers.

pub mod commands;
pub mod config;
pub mod expr;
pub mod svg;
pub mod table;

pub use commands::{CliError, Command, Report, run};
pub use config::{ConfigError, RunConfig, parse_config};
