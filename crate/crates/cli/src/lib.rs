//! Command-line front end for the tethered-UAV link simulator.
//!
//! The binary is a thin wrapper; configuration parsing, CSV encoding and
//! subcommand execution live here so they can be tested directly.

pub mod commands;
pub mod config;
pub mod csvout;
mod error;

pub use commands::{run, Outcome, Subcommand, OUT_DIR_VAR};
pub use config::{parse_config, parse_with_overrides, Overrides, RunConfig};
pub use error::CliError;
