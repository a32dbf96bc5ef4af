//! Activity-log parsing, validation, and aggregation.
//!
//! Logs are JSON Lines: one object per line, discriminated by a `record`
//! field that is either `"user"` (a profile declaration) or `"event"` (one
//! timestamped action). Unknown extra fields are ignored so logs can carry
//! platform-specific data. Blank lines are skipped.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LogError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {reason}")]
    Invalid { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Community role declared for a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Administrator,
    Moderator,
    Member,
    Guest,
}

/// A member profile. Credentials are deliberately not part of the model;
/// nothing downstream needs them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub login: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Role>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub email: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_visit: Option<DateTime<Utc>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub personal_data: BTreeMap<String, serde_json::Value>,
}

impl UserProfile {
    /// The profile synthesized for a login that appears in events but has no
    /// `"user"` record.
    pub fn minimal(login: impl Into<String>) -> Self {
        UserProfile {
            login: login.into(),
            status: None,
            email: None,
            member_name: None,
            last_visit: None,
            personal_data: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EventKind {
    ThreadCreated,
    PollCreated,
    PostCreated,
    VoteCast,
    FeedbackGiven,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EventKind::ThreadCreated => "ThreadCreated",
            EventKind::PollCreated => "PollCreated",
            EventKind::PostCreated => "PostCreated",
            EventKind::VoteCast => "VoteCast",
            EventKind::FeedbackGiven => "FeedbackGiven",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

/// One timestamped user action.
///
/// `target_author` names whose content was acted on: required for votes and
/// feedback (which must target someone else), optional for posts (present
/// marks the post as a reply), and disallowed for thread/poll creation.
/// `polarity` is present exactly for feedback.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActivityEvent {
    pub kind: EventKind,
    pub actor: String,
    pub timestamp: DateTime<Utc>,
    pub content_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_author: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Polarity>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
enum LogRecord {
    User(UserProfile),
    Event(ActivityEvent),
}

/// A parsed log: profiles (declared first, then synthesized ones in order of
/// first reference) and validated events, both in input order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParsedLog {
    pub profiles: Vec<UserProfile>,
    pub events: Vec<ActivityEvent>,
}

impl ParsedLog {
    /// Renders the log back to JSON Lines, profiles first. Reparsing the
    /// output yields an equal `ParsedLog`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for profile in &self.profiles {
            let record = LogRecord::User(profile.clone());
            out.push_str(&serde_json::to_string(&record).expect("profiles serialize"));
            out.push('\n');
        }
        for event in &self.events {
            let record = LogRecord::Event(event.clone());
            out.push_str(&serde_json::to_string(&record).expect("events serialize"));
            out.push('\n');
        }
        out
    }
}

fn invalid(line: usize, reason: impl Into<String>) -> LogError {
    LogError::Invalid {
        line,
        reason: reason.into(),
    }
}

fn validate_profile(profile: &UserProfile, line: usize) -> Result<(), LogError> {
    if profile.login.is_empty() {
        return Err(invalid(line, "login must be non-empty"));
    }
    Ok(())
}

fn validate_event(event: &ActivityEvent, line: usize) -> Result<(), LogError> {
    if event.actor.is_empty() {
        return Err(invalid(line, "actor must be non-empty"));
    }
    if event.content_id.is_empty() {
        return Err(invalid(line, "content_id must be non-empty"));
    }
    if let Some(target) = &event.target_author {
        if target.is_empty() {
            return Err(invalid(line, "target_author must be non-empty when present"));
        }
    }
    match event.kind {
        EventKind::VoteCast | EventKind::FeedbackGiven => {
            let target = event.target_author.as_deref().ok_or_else(|| {
                invalid(line, format!("{} requires target_author", event.kind))
            })?;
            if target == event.actor {
                return Err(invalid(
                    line,
                    format!("self-reaction: {} may not target the actor's own content", event.kind),
                ));
            }
        }
        EventKind::ThreadCreated | EventKind::PollCreated => {
            if event.target_author.is_some() {
                return Err(invalid(
                    line,
                    format!("target_author is not allowed for {}", event.kind),
                ));
            }
        }
        EventKind::PostCreated => {}
    }
    match (event.kind, event.polarity.is_some()) {
        (EventKind::FeedbackGiven, false) => {
            Err(invalid(line, "FeedbackGiven requires polarity"))
        }
        (EventKind::FeedbackGiven, true) => Ok(()),
        (kind, true) => Err(invalid(line, format!("polarity is not allowed for {kind}"))),
        (_, false) => Ok(()),
    }
}

/// Parses a JSON-Lines activity log.
///
/// Every well-formed line becomes exactly one profile or event. Logins that
/// appear only inside events get minimal synthesized profiles so the profile
/// list covers every login the log references.
pub fn parse_event_log<R: BufRead>(reader: R) -> Result<ParsedLog, LogError> {
    let mut profiles: Vec<UserProfile> = Vec::new();
    let mut declared: BTreeMap<String, usize> = BTreeMap::new();
    let mut events: Vec<(usize, ActivityEvent)> = Vec::new();

    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: LogRecord = serde_json::from_str(&line).map_err(|source| LogError::Json {
            line: line_no,
            source,
        })?;
        match record {
            LogRecord::User(profile) => {
                validate_profile(&profile, line_no)?;
                if declared.contains_key(&profile.login) {
                    return Err(invalid(
                        line_no,
                        format!("duplicate user record for login '{}'", profile.login),
                    ));
                }
                declared.insert(profile.login.clone(), line_no);
                profiles.push(profile);
            }
            LogRecord::Event(event) => {
                validate_event(&event, line_no)?;
                events.push((line_no, event));
            }
        }
    }

    // A declared last_visit must not precede any of that user's events.
    let last_visits: BTreeMap<&str, DateTime<Utc>> = profiles
        .iter()
        .filter_map(|p| p.last_visit.map(|ts| (p.login.as_str(), ts)))
        .collect();
    for (line_no, event) in &events {
        if let Some(last_visit) = last_visits.get(event.actor.as_str()) {
            if event.timestamp > *last_visit {
                return Err(invalid(
                    *line_no,
                    format!(
                        "event at {} is after the declared last_visit {} of '{}'",
                        event.timestamp.to_rfc3339(),
                        last_visit.to_rfc3339(),
                        event.actor
                    ),
                ));
            }
        }
    }

    // Synthesize profiles for logins seen only in events, in first-reference
    // order (actor before target within one event).
    let mut known: BTreeSet<String> = declared.into_keys().collect();
    for (_, event) in &events {
        for login in std::iter::once(&event.actor).chain(event.target_author.iter()) {
            if known.insert(login.clone()) {
                profiles.push(UserProfile::minimal(login.clone()));
            }
        }
    }

    Ok(ParsedLog {
        profiles,
        events: events.into_iter().map(|(_, event)| event).collect(),
    })
}

/// Raw per-user activity tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ActivityCounts {
    pub threads_created: u64,
    pub polls_created: u64,
    pub posts_created: u64,
    pub votes_cast: u64,
    pub feedback_given: u64,
    pub positive_feedback_given: u64,
    pub replies_authored: u64,
    pub positive_feedback_received: u64,
    pub total_feedback_received: u64,
    pub distinct_reactors: u64,
}

/// Community-wide totals; each total is the sum of the matching per-user
/// count, and `member_count` is the number of known logins.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CommunityTotals {
    pub total_threads: u64,
    pub total_polls: u64,
    pub total_posts: u64,
    pub total_votes: u64,
    pub total_feedback: u64,
    pub member_count: u64,
}

/// Per-user counts plus community totals for one log.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ActivitySummary {
    pub per_user: BTreeMap<String, ActivityCounts>,
    pub totals: CommunityTotals,
}

/// Tallies validated events into per-user counts and community totals.
///
/// Profiles seed zero-count entries so inactive members still appear. The
/// fold is order-independent: any permutation of `events` yields the same
/// summary.
pub fn aggregate(events: &[ActivityEvent], profiles: &[UserProfile]) -> ActivitySummary {
    let mut per_user: BTreeMap<String, ActivityCounts> = profiles
        .iter()
        .map(|p| (p.login.clone(), ActivityCounts::default()))
        .collect();
    let mut reactors: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();

    for event in events {
        {
            let counts = per_user.entry(event.actor.clone()).or_default();
            match event.kind {
                EventKind::ThreadCreated => counts.threads_created += 1,
                EventKind::PollCreated => counts.polls_created += 1,
                EventKind::PostCreated => {
                    counts.posts_created += 1;
                    if event
                        .target_author
                        .as_deref()
                        .is_some_and(|target| target != event.actor)
                    {
                        counts.replies_authored += 1;
                    }
                }
                EventKind::VoteCast => counts.votes_cast += 1,
                EventKind::FeedbackGiven => {
                    counts.feedback_given += 1;
                    if event.polarity == Some(Polarity::Positive) {
                        counts.positive_feedback_given += 1;
                    }
                }
            }
        }
        if matches!(event.kind, EventKind::VoteCast | EventKind::FeedbackGiven) {
            let target = event
                .target_author
                .as_deref()
                .expect("validated reactions carry a target");
            let received = per_user.entry(target.to_string()).or_default();
            if event.kind == EventKind::FeedbackGiven {
                received.total_feedback_received += 1;
                if event.polarity == Some(Polarity::Positive) {
                    received.positive_feedback_received += 1;
                }
            }
            reactors.entry(target).or_default().insert(&event.actor);
        }
    }

    for (target, set) in reactors {
        per_user
            .get_mut(target)
            .expect("reaction targets have entries")
            .distinct_reactors = set.len() as u64;
    }

    let mut totals = CommunityTotals {
        member_count: per_user.len() as u64,
        ..CommunityTotals::default()
    };
    for counts in per_user.values() {
        totals.total_threads += counts.threads_created;
        totals.total_polls += counts.polls_created;
        totals.total_posts += counts.posts_created;
        totals.total_votes += counts.votes_cast;
        totals.total_feedback += counts.feedback_given;
    }

    ActivitySummary { per_user, totals }
}
