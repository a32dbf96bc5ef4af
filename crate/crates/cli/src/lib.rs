//! Configuration loading and report building behind the `memberscope` binary.

pub mod config;
pub mod report;

pub use config::{load_config, load_ruleset, Config, ConfigError, ConfigIssue, LoadedConfig};
pub use report::{build_report, explain_user, to_json, to_table, PipelineError, Report};
