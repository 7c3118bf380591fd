//! Batch verification jobs over the exact core: TOML in, JSON out.

pub mod config;
pub mod jobs;
pub mod report;

pub use config::{load, ConfigError, Job};
pub use jobs::{run, Command, Options, RunError};
pub use report::{Report, Status};
