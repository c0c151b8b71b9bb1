//! File formats, sweep driver and subcommands behind the `blotto` binary.
//!
//! The game math lives in `blotto-core`; this crate adds JSON strategy
//! files, the sweep CSV format and the process-level error conventions.

#![allow(clippy::result_large_err)]

pub mod commands;
pub mod error;
pub mod strategy;
pub mod sweep;

pub use error::{CliError, Result};
pub use sweep::{read_csv, sweep, sweep_detailed, sweep_row, write_csv, SweepRecord};
