//! Scenario files, CSV export, summary reports and the built-in table suites
//! behind the `glass` command-line tool.

pub mod commands;
pub mod config;
mod error;
pub mod export;
pub mod report;
pub mod tables;

pub use error::{AppError, ConfigError};
