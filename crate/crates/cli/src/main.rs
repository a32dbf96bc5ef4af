use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use memberscope_cli::config::{load_config, load_ruleset, Config, ConfigError, LoadedConfig};
use memberscope_cli::report::{build_report, explain_user, to_json, to_table, PipelineError};
use memberscope_core::ingest::{parse_event_log, LogError, ParsedLog};
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit codes: 0 success, 1 validation error, 2 I/O error.
#[derive(Debug)]
enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(message) | CliError::Io(message) => message,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        match err {
            ConfigError::Io { .. } => CliError::Io(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(err: PipelineError) -> Self {
        CliError::Validation(err.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Parser)]
#[command(
    name = "memberscope",
    version,
    about = "Classify community members by behavior and rank them by usefulness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a configuration file, reporting every violated constraint
    ValidateConfig {
        /// Configuration file to check
        #[arg(long)]
        config: PathBuf,
    },
    /// Classify every user in an activity log
    Classify {
        /// JSON-Lines activity log
        log: PathBuf,
        /// Configuration file (defaults apply when omitted)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output format; JSON is the stable contract
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Ruleset override file (takes precedence over the config)
        #[arg(long)]
        ruleset: Option<PathBuf>,
    },
    /// Rank users by usefulness and flag the community core
    Rank {
        /// JSON-Lines activity log
        log: PathBuf,
        /// Configuration file (defaults apply when omitted)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output format; JSON is the stable contract
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Usefulness cutoff for the core, in [0, 1] (overrides the config)
        #[arg(long)]
        core_threshold: Option<f64>,
        /// Ruleset override file (takes precedence over the config)
        #[arg(long)]
        ruleset: Option<PathBuf>,
    },
    /// Print one user's pipeline trace, stage by stage
    Explain {
        /// JSON-Lines activity log
        log: PathBuf,
        /// Configuration file (defaults apply when omitted)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Login to trace
        #[arg(long)]
        user: String,
        /// Ruleset override file (takes precedence over the config)
        #[arg(long)]
        ruleset: Option<PathBuf>,
    },
}

fn effective_config(
    config_path: Option<&Path>,
    ruleset_path: Option<&Path>,
) -> Result<Config, CliError> {
    let loaded = match config_path {
        Some(path) => load_config(path)?,
        None => LoadedConfig {
            config: Config::default(),
            warnings: Vec::new(),
        },
    };
    for warning in &loaded.warnings {
        eprintln!("warning: {warning}");
    }
    let mut config = loaded.config;
    if let Some(path) = ruleset_path {
        config.ruleset = load_ruleset(path)?;
    }
    Ok(config)
}

fn read_log(path: &Path) -> Result<ParsedLog, CliError> {
    let file = File::open(path)
        .map_err(|err| CliError::Io(format!("cannot read {}: {err}", path.display())))?;
    parse_event_log(BufReader::new(file)).map_err(|err| match err {
        LogError::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        other => CliError::Validation(format!("{}: {other}", path.display())),
    })
}

fn checked_threshold(value: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(CliError::Validation(format!(
            "core threshold {value} outside [0, 1]"
        )))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::ValidateConfig { config } => match load_config(&config) {
            Ok(loaded) => {
                for warning in &loaded.warnings {
                    eprintln!("warning: {warning}");
                }
                println!("configuration OK: {}", config.display());
                Ok(())
            }
            Err(ConfigError::Invalid { issues }) => {
                for issue in &issues {
                    println!("invalid: {issue}");
                }
                Err(CliError::Validation(format!(
                    "{} failed validation with {} issue(s)",
                    config.display(),
                    issues.len()
                )))
            }
            Err(other) => Err(other.into()),
        },
        Command::Classify {
            log,
            config,
            format,
            ruleset,
        } => {
            let config = effective_config(config.as_deref(), ruleset.as_deref())?;
            let parsed = read_log(&log)?;
            let report = build_report(&parsed, &config, config.core_threshold)?;
            match format {
                OutputFormat::Json => print!("{}", to_json(&report)),
                OutputFormat::Table => print!("{}", to_table(&report)),
            }
            Ok(())
        }
        Command::Rank {
            log,
            config,
            format,
            core_threshold,
            ruleset,
        } => {
            let config = effective_config(config.as_deref(), ruleset.as_deref())?;
            let threshold = checked_threshold(core_threshold.unwrap_or(config.core_threshold))?;
            let parsed = read_log(&log)?;
            let report = build_report(&parsed, &config, threshold)?;
            match format {
                OutputFormat::Json => print!("{}", to_json(&report)),
                OutputFormat::Table => print!("{}", to_table(&report)),
            }
            Ok(())
        }
        Command::Explain {
            log,
            config,
            user,
            ruleset,
        } => {
            let config = effective_config(config.as_deref(), ruleset.as_deref())?;
            let parsed = read_log(&log)?;
            let trace = explain_user(&parsed, &config, config.core_threshold, &user)?;
            print!("{trace}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
