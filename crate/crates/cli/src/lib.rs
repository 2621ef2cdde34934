//! Batch driver for the level-spectroscopy protocol: scenario configs,
//! artifact files and the run / oracle / compare pipeline.

pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;

pub use config::{Overrides, ScenarioConfig};
pub use error::{CliError, Result};
