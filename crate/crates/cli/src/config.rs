//! Analysis configuration: expert breakpoints, mixing weights, the core
//! cutoff, and an optional ruleset override.
//!
//! The on-disk form is a single JSON document. Every section is optional;
//! a missing section falls back to its documented default with a warning,
//! while any value that fails its own validator is collected into the issue
//! list so one run reports every problem.

use memberscope_core::characteristic::Characteristic;
use memberscope_core::classify::{default_ruleset, Rule, Ruleset};
use memberscope_core::fuzzy::{ThresholdBank, ThresholdSet};
use memberscope_core::metrics::ActivenessWeights;
use memberscope_core::usefulness::WeightVector;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const CONFIG_SCHEMA_VERSION: u32 = 1;

/// Default core cutoff when the config names none.
pub const DEFAULT_CORE_THRESHOLD: f64 = 0.5;

/// The raw configuration document as written on disk.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub schema_version: Option<u32>,
    /// Free-form notes; ignored by the tool.
    #[serde(default)]
    pub notes: Option<serde_json::Value>,
    /// Breakpoints per characteristic name; unnamed characteristics use the
    /// default set.
    #[serde(default)]
    pub thresholds: Option<BTreeMap<String, ThresholdSet>>,
    #[serde(default)]
    pub activeness_weights: Option<ActivenessWeights>,
    #[serde(default)]
    pub usefulness_weights: Option<WeightVector>,
    /// Named weight presets for different community development scenarios.
    #[serde(default)]
    pub weight_profiles: BTreeMap<String, WeightVector>,
    /// Selects a profile from `weight_profiles` as the usefulness weights.
    #[serde(default)]
    pub active_profile: Option<String>,
    #[serde(default)]
    pub core_threshold: Option<f64>,
    /// Path to a ruleset override file, relative to this config file.
    #[serde(default)]
    pub ruleset: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RulesetFile {
    rules: Vec<Rule>,
}

/// One problem found while validating a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub section: String,
    pub message: String,
}

impl ConfigIssue {
    fn new(section: impl Into<String>, message: impl fmt::Display) -> Self {
        ConfigIssue {
            section: section.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.section, self.message)
    }
}

fn join_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(ConfigIssue::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Syntax {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}", join_issues(issues))]
    Invalid { issues: Vec<ConfigIssue> },
}

/// Fully resolved and validated runtime configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub thresholds: ThresholdBank,
    pub activeness_weights: ActivenessWeights,
    pub usefulness_weights: WeightVector,
    pub core_threshold: f64,
    pub ruleset: Ruleset,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            thresholds: ThresholdBank::default(),
            activeness_weights: ActivenessWeights::default(),
            usefulness_weights: WeightVector::default(),
            core_threshold: DEFAULT_CORE_THRESHOLD,
            ruleset: default_ruleset(),
        }
    }
}

/// A resolved configuration plus the fallback warnings it produced.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: Config,
    pub warnings: Vec<String>,
}

/// Loads a ruleset override file.
pub fn load_ruleset(path: &Path) -> Result<Ruleset, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let doc: RulesetFile = serde_json::from_str(&text).map_err(|source| ConfigError::Syntax {
        path: path.to_path_buf(),
        source,
    })?;
    Ruleset::new(doc.rules).map_err(|err| ConfigError::Invalid {
        issues: vec![ConfigIssue::new("rules", err)],
    })
}

/// Reads, parses, and resolves a configuration file.
///
/// I/O failures and malformed JSON abort immediately; semantic problems are
/// collected so the returned error names every violated constraint.
pub fn load_config(path: &Path) -> Result<LoadedConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let doc: ConfigFile = serde_json::from_str(&text).map_err(|source| ConfigError::Syntax {
        path: path.to_path_buf(),
        source,
    })?;
    let base_dir = path.parent().unwrap_or_else(|| Path::new("."));
    resolve_config(doc, base_dir)
}

/// Resolves a parsed document against the defaults. `base_dir` anchors the
/// relative ruleset path.
pub fn resolve_config(doc: ConfigFile, base_dir: &Path) -> Result<LoadedConfig, ConfigError> {
    let mut issues: Vec<ConfigIssue> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    if let Some(version) = doc.schema_version {
        if version != CONFIG_SCHEMA_VERSION {
            issues.push(ConfigIssue::new(
                "schema_version",
                format!("unsupported version {version} (expected {CONFIG_SCHEMA_VERSION})"),
            ));
        }
    }

    let mut thresholds = ThresholdBank::default();
    match &doc.thresholds {
        None => warnings.push(
            "thresholds: section missing; using the default breakpoints for every characteristic"
                .to_string(),
        ),
        Some(named) => {
            for (name, set) in named {
                let section = format!("thresholds.{name}");
                match name.parse::<Characteristic>() {
                    Err(err) => issues.push(ConfigIssue::new("thresholds", err)),
                    Ok(characteristic) => {
                        if let Err(err) = thresholds.set(characteristic, *set) {
                            issues.push(ConfigIssue::new(section, err));
                        }
                    }
                }
            }
        }
    }

    let activeness_weights = match doc.activeness_weights {
        None => {
            warnings.push(
                "activeness_weights: section missing; using equal weights (0.2 each)".to_string(),
            );
            ActivenessWeights::default()
        }
        Some(weights) => {
            if let Err(err) = weights.validate() {
                issues.push(ConfigIssue::new("activeness_weights", err));
            }
            weights
        }
    };

    for (name, profile) in &doc.weight_profiles {
        if let Err(err) = profile.validate() {
            issues.push(ConfigIssue::new(format!("weight_profiles.{name}"), err));
        }
    }
    let usefulness_weights = match (&doc.active_profile, doc.usefulness_weights) {
        (Some(name), inline) => {
            if inline.is_some() {
                warnings.push(format!(
                    "usefulness_weights: overridden by active_profile '{name}'"
                ));
            }
            match doc.weight_profiles.get(name) {
                Some(profile) => *profile,
                None => {
                    issues.push(ConfigIssue::new(
                        "active_profile",
                        format!("no weight profile named '{name}'"),
                    ));
                    WeightVector::default()
                }
            }
        }
        (None, Some(weights)) => {
            if let Err(err) = weights.validate() {
                issues.push(ConfigIssue::new("usefulness_weights", err));
            }
            weights
        }
        (None, None) => {
            warnings.push(
                "usefulness_weights: section missing; using equal weights (0.2 each)".to_string(),
            );
            WeightVector::default()
        }
    };

    let core_threshold = match doc.core_threshold {
        None => {
            warnings.push(format!(
                "core_threshold: missing; using {DEFAULT_CORE_THRESHOLD}"
            ));
            DEFAULT_CORE_THRESHOLD
        }
        Some(value) => {
            if !(0.0..=1.0).contains(&value) {
                issues.push(ConfigIssue::new(
                    "core_threshold",
                    format!("{value} outside [0, 1]"),
                ));
            }
            value
        }
    };

    let ruleset = match &doc.ruleset {
        None => default_ruleset(),
        Some(relative) => match load_ruleset(&base_dir.join(relative)) {
            Ok(ruleset) => ruleset,
            Err(ConfigError::Invalid { issues: nested }) => {
                for issue in nested {
                    issues.push(ConfigIssue::new(
                        format!("ruleset.{}", issue.section),
                        issue.message,
                    ));
                }
                default_ruleset()
            }
            Err(other) => return Err(other),
        },
    };

    if !issues.is_empty() {
        return Err(ConfigError::Invalid { issues });
    }
    Ok(LoadedConfig {
        config: Config {
            thresholds,
            activeness_weights,
            usefulness_weights,
            core_threshold,
            ruleset,
        },
        warnings,
    })
}
