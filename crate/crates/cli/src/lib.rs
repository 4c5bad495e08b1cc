//! Experiment runner for the Poisson-field outage models: JSON configs in,
//! CSV tables (and optional SVG plots) out.

pub mod config;
pub mod output;
pub mod run;

pub use config::{resolve, Config, ConfigError, Experiment, Overrides};
pub use run::{run, Table};
