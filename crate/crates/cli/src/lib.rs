//! Batch verification runs over the sandwich-core suites, reported as JSON.

pub mod config;
pub mod report;
pub mod run;

pub use config::{load_config, parse_config, ConfigError, ModelSpec, Overrides, RunConfig, Suite};
pub use report::{CheckRecord, CheckVerdict, Mode, Report, SuiteVerdict};
pub use run::{exec_for, run, RunError};
