//! End-to-end report assembly and rendering.
//!
//! One pass over a parsed log produces a [`Report`]: per-user rows ordered by
//! rank plus a community summary. JSON rendering is the stable machine
//! contract (struct fields in declaration order, maps sorted by key, so equal
//! inputs produce byte-identical output); the table and the per-user trace
//! are for humans.

use crate::config::Config;
use memberscope_core::characteristic::Characteristic;
use memberscope_core::classify::{classify_user, firing_strength, ClassifyError, UserClass};
use memberscope_core::fuzzy::{FuzzyError, MembershipDegrees, Term};
use memberscope_core::ingest::{aggregate, ActivityCounts, CommunityTotals, ParsedLog};
use memberscope_core::metrics::{compute_characteristics, CharacteristicVector, MetricsError};
use memberscope_core::usefulness::{
    compute_usefulness, extract_core, rank_users, UsefulnessError,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Usefulness(#[from] UsefulnessError),
    #[error("unknown user '{0}'")]
    UnknownUser(String),
}

/// One user's full report row.
#[derive(Debug, Clone, Serialize)]
pub struct UserReport {
    pub login: String,
    pub rank: u32,
    pub usefulness: f64,
    pub class: String,
    pub in_core: bool,
    pub characteristics: CharacteristicVector,
    pub memberships: BTreeMap<Characteristic, MembershipDegrees>,
    pub dominant_terms: BTreeMap<Characteristic, Term>,
    pub firing_strengths: BTreeMap<UserClass, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub member_count: u64,
    pub class_histogram: BTreeMap<String, u64>,
    /// Core member logins, in rank order.
    pub core: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub core_threshold: f64,
    pub users: Vec<UserReport>,
    pub summary: Summary,
}

pub fn class_label(class: Option<UserClass>) -> String {
    class.map_or_else(|| "Unclassified".to_string(), |c| c.name().to_string())
}

/// Runs the whole pipeline over a parsed log.
pub fn build_report(
    log: &ParsedLog,
    config: &Config,
    core_threshold: f64,
) -> Result<Report, PipelineError> {
    let summary = aggregate(&log.events, &log.profiles);

    let mut vectors: BTreeMap<String, CharacteristicVector> = BTreeMap::new();
    let mut memberships: BTreeMap<String, BTreeMap<Characteristic, MembershipDegrees>> =
        BTreeMap::new();
    let mut assignments = BTreeMap::new();
    let mut scores = BTreeMap::new();
    for (login, counts) in &summary.per_user {
        let cv = compute_characteristics(counts, &summary.totals, &config.activeness_weights)?;
        let mut degrees = BTreeMap::new();
        for characteristic in Characteristic::ALL {
            degrees.insert(
                characteristic,
                config
                    .thresholds
                    .get(characteristic)
                    .evaluate(cv.get(characteristic))?,
            );
        }
        let assignment = classify_user(login, &cv, &config.thresholds, &config.ruleset)?;
        let score = compute_usefulness(&cv, &config.usefulness_weights)?;
        vectors.insert(login.clone(), cv);
        memberships.insert(login.clone(), degrees);
        assignments.insert(login.clone(), assignment);
        scores.insert(login.clone(), score);
    }

    let ranked = rank_users(&scores, &assignments)?;
    let core = extract_core(&ranked, core_threshold)?;
    let core_logins: BTreeSet<&str> = core.iter().map(|u| u.login.as_str()).collect();

    let mut class_histogram: BTreeMap<String, u64> = BTreeMap::new();
    let mut users = Vec::with_capacity(ranked.len());
    for entry in &ranked {
        let assignment = &assignments[&entry.login];
        let label = class_label(assignment.class);
        *class_histogram.entry(label.clone()).or_insert(0) += 1;
        users.push(UserReport {
            login: entry.login.clone(),
            rank: entry.rank,
            usefulness: entry.usefulness,
            class: label,
            in_core: core_logins.contains(entry.login.as_str()),
            characteristics: vectors[&entry.login],
            memberships: memberships.remove(&entry.login).expect("membership per user"),
            dominant_terms: assignment.dominant_terms.clone(),
            firing_strengths: assignment.firing_strengths.clone(),
        });
    }

    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        core_threshold,
        users,
        summary: Summary {
            member_count: summary.totals.member_count,
            class_histogram,
            core: core.iter().map(|u| u.login.clone()).collect(),
        },
    })
}

/// The report as pretty-printed JSON with a trailing newline.
pub fn to_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

/// A fixed-width table of the ranking; human-oriented, not a stable surface.
pub fn to_table(report: &Report) -> String {
    let login_width = report
        .users
        .iter()
        .map(|u| u.login.len())
        .chain(std::iter::once("LOGIN".len()))
        .max()
        .unwrap_or(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:<login_width$}  {:<12}  {:>10}  CORE",
        "RANK", "LOGIN", "CLASS", "USEFULNESS"
    );
    for user in &report.users {
        let _ = writeln!(
            out,
            "{:>4}  {:<login_width$}  {:<12}  {:>10.4}  {}",
            user.rank,
            user.login,
            user.class,
            user.usefulness,
            if user.in_core { "yes" } else { "" }
        );
    }
    let _ = writeln!(
        out,
        "\n{} member(s); core at threshold {}: {}",
        report.summary.member_count,
        report.core_threshold,
        if report.summary.core.is_empty() {
            "none".to_string()
        } else {
            report.summary.core.join(", ")
        }
    );
    out
}

fn write_counts(out: &mut String, counts: &ActivityCounts, totals: &CommunityTotals) {
    let rows = [
        ("threads_created", counts.threads_created),
        ("polls_created", counts.polls_created),
        ("posts_created", counts.posts_created),
        ("votes_cast", counts.votes_cast),
        ("feedback_given", counts.feedback_given),
        ("positive_feedback_given", counts.positive_feedback_given),
        ("replies_authored", counts.replies_authored),
        ("positive_feedback_received", counts.positive_feedback_received),
        ("total_feedback_received", counts.total_feedback_received),
        ("distinct_reactors", counts.distinct_reactors),
    ];
    for (name, value) in rows {
        let _ = writeln!(out, "  {name}: {value}");
    }
    let _ = writeln!(
        out,
        "community totals: threads {}, polls {}, posts {}, votes {}, feedback {}, members {}",
        totals.total_threads,
        totals.total_polls,
        totals.total_posts,
        totals.total_votes,
        totals.total_feedback,
        totals.member_count,
    );
}

/// A labeled stage-by-stage trace for one user: counts, normalized
/// characteristics, membership degrees, rule strengths, class, usefulness.
pub fn explain_user(
    log: &ParsedLog,
    config: &Config,
    core_threshold: f64,
    login: &str,
) -> Result<String, PipelineError> {
    let summary = aggregate(&log.events, &log.profiles);
    let counts = summary
        .per_user
        .get(login)
        .ok_or_else(|| PipelineError::UnknownUser(login.to_string()))?;
    let report = build_report(log, config, core_threshold)?;
    let row = report
        .users
        .iter()
        .find(|u| u.login == login)
        .expect("ranking covers every known user");

    let mut out = String::new();
    let _ = writeln!(out, "user: {login}\n");

    let _ = writeln!(out, "activity counts");
    write_counts(&mut out, counts, &summary.totals);

    let _ = writeln!(out, "\nnormalized characteristics");
    for characteristic in Characteristic::ALL {
        let _ = writeln!(
            out,
            "  {characteristic}: {:.6}",
            row.characteristics.get(characteristic)
        );
    }

    let _ = writeln!(out, "\nmembership degrees (low / medium / high)");
    for characteristic in Characteristic::ALL {
        let degrees = &row.memberships[&characteristic];
        let dominant = row
            .dominant_terms
            .get(&characteristic)
            .map(|term| format!("  -> {term}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {characteristic}: {:.6} / {:.6} / {:.6}{dominant}",
            degrees.low, degrees.medium, degrees.high
        );
    }

    let _ = writeln!(out, "\nrule firing strengths");
    let top_level: BTreeMap<Characteristic, MembershipDegrees> = Characteristic::TOP_LEVEL
        .iter()
        .map(|c| (*c, row.memberships[c]))
        .collect();
    for rule in config.ruleset.rules() {
        let strength = firing_strength(rule, &top_level)?;
        let _ = writeln!(out, "  {} {}: {:.6}", rule.priority, rule.class, strength);
    }

    let _ = writeln!(out, "\nclass: {}", row.class);
    let _ = writeln!(
        out,
        "usefulness: {:.6} (rank {} of {}, {}core at threshold {})",
        row.usefulness,
        row.rank,
        report.users.len(),
        if row.in_core { "in the " } else { "not in the " },
        report.core_threshold,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use memberscope_core::ingest::parse_event_log;

    fn sample_log() -> ParsedLog {
        let text = concat!(
            r#"{"record":"user","login":"ann"}"#, "\n",
            r#"{"record":"user","login":"bob"}"#, "\n",
            r#"{"record":"event","kind":"ThreadCreated","actor":"ann","timestamp":"2020-01-01T08:00:00Z","content_id":"t1"}"#, "\n",
            r#"{"record":"event","kind":"PostCreated","actor":"ann","timestamp":"2020-01-01T08:10:00Z","content_id":"p1"}"#, "\n",
            r#"{"record":"event","kind":"PostCreated","actor":"bob","timestamp":"2020-01-01T08:30:00Z","content_id":"p3","target_author":"ann"}"#, "\n",
            r#"{"record":"event","kind":"PostCreated","actor":"ann","timestamp":"2020-01-01T08:45:00Z","content_id":"p2","target_author":"bob"}"#, "\n",
            r#"{"record":"event","kind":"VoteCast","actor":"bob","timestamp":"2020-01-01T09:00:00Z","content_id":"t1","target_author":"ann"}"#, "\n",
            r#"{"record":"event","kind":"FeedbackGiven","actor":"bob","timestamp":"2020-01-01T09:30:00Z","content_id":"p1","target_author":"ann","polarity":"Positive"}"#, "\n",
        );
        parse_event_log(text.as_bytes()).unwrap()
    }

    /// Hand-derived expectations for the two-user fixture under the default
    /// configuration: ann is an Activist with usefulness 0.2/3 + 0.5,
    /// bob a Moderator with usefulness 0.2 * 7/15 + 0.4.
    #[test]
    fn two_user_fixture_matches_hand_run() {
        let config = Config::default();
        let report = build_report(&sample_log(), &config, config.core_threshold).unwrap();

        assert_eq!(report.users.len(), 2);
        let ann = &report.users[0];
        let bob = &report.users[1];

        assert_eq!(ann.login, "ann");
        assert_eq!(ann.rank, 1);
        assert_eq!(ann.class, "Activist");
        let ann_expected = 0.2 * (1.0 / 3.0) + 0.2 + 0.2 + 0.2 * 0.5;
        assert!((ann.usefulness - ann_expected).abs() < 1e-12);
        assert!(ann.in_core);

        assert_eq!(bob.login, "bob");
        assert_eq!(bob.rank, 2);
        assert_eq!(bob.class, "Moderator");
        let bob_expected = 0.2 * (7.0 / 15.0) + 0.2 + 0.2;
        assert!((bob.usefulness - bob_expected).abs() < 1e-12);
        assert!(!bob.in_core);

        assert_eq!(report.summary.core, vec!["ann".to_string()]);
        assert_eq!(report.summary.class_histogram["Activist"], 1);
        assert_eq!(report.summary.class_histogram["Moderator"], 1);
    }

    /// Users declared in an empty event log have all-zero characteristics,
    /// which the reader rule covers.
    #[test]
    fn declared_users_with_no_events_are_readers() {
        let text = concat!(
            r#"{"record":"user","login":"ann"}"#, "\n",
            r#"{"record":"user","login":"bob"}"#, "\n",
        );
        let log = parse_event_log(text.as_bytes()).unwrap();
        let config = Config::default();
        let report = build_report(&log, &config, config.core_threshold).unwrap();
        assert_eq!(report.users.len(), 2);
        for user in &report.users {
            assert_eq!(user.class, "Reader");
            assert_eq!(user.usefulness, 0.0);
        }
    }

    #[test]
    fn empty_log_yields_an_empty_report() {
        let report = build_report(&ParsedLog::default(), &Config::default(), 0.5).unwrap();
        assert!(report.users.is_empty());
        assert_eq!(report.summary.member_count, 0);
        assert!(report.summary.core.is_empty());
    }

    #[test]
    fn json_rendering_is_deterministic() {
        let config = Config::default();
        let log = sample_log();
        let first = to_json(&build_report(&log, &config, 0.5).unwrap());
        let second = to_json(&build_report(&log, &config, 0.5).unwrap());
        assert_eq!(first, second);
        assert!(first.ends_with('\n'));
    }

    #[test]
    fn explain_is_consistent_with_the_report() {
        let config = Config::default();
        let log = sample_log();
        let report = build_report(&log, &config, config.core_threshold).unwrap();
        let trace = explain_user(&log, &config, config.core_threshold, "ann").unwrap();
        assert!(trace.contains("class: Activist"));
        let ann = &report.users[0];
        assert!(trace.contains(&format!("usefulness: {:.6}", ann.usefulness)));
        assert!(trace.contains("activity counts"));
        assert!(trace.contains("rule firing strengths"));

        let err = explain_user(&log, &config, config.core_threshold, "nobody").unwrap_err();
        assert!(matches!(err, PipelineError::UnknownUser(_)));
    }

    #[test]
    fn table_lists_every_user() {
        let config = Config::default();
        let report = build_report(&sample_log(), &config, 0.5).unwrap();
        let table = to_table(&report);
        assert!(table.contains("ann"));
        assert!(table.contains("bob"));
        assert!(table.contains("RANK"));
    }
}
