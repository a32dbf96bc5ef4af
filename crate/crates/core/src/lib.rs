//! Behavioral classification and usefulness ranking for online community
//! members.
//!
//! The pipeline runs in five stages, one module each:
//!
//! 1. [`ingest`] — parse a JSON-Lines activity log and tally per-user counts.
//! 2. [`metrics`] — normalize counts into ten characteristic scores in `[0, 1]`.
//! 3. [`fuzzy`] — evaluate low/medium/high membership degrees under expert
//!    breakpoints.
//! 4. [`classify`] — fire the production rules and assign a behavioral class.
//! 5. [`usefulness`] — score, rank, and extract the community core.

pub mod characteristic;
pub mod classify;
pub mod fuzzy;
pub mod ingest;
pub mod metrics;
pub mod usefulness;

pub use characteristic::Characteristic;
pub use classify::{
    classify_user, default_ruleset, firing_strength, ClassAssignment, ClassifyError, Rule,
    Ruleset, UserClass,
};
pub use fuzzy::{
    FuzzyError, LinguisticVariable, MembershipDegrees, Term, ThresholdBank, ThresholdSet,
};
pub use ingest::{
    aggregate, parse_event_log, ActivityCounts, ActivityEvent, ActivitySummary, CommunityTotals,
    EventKind, LogError, ParsedLog, Polarity, Role, UserProfile,
};
pub use metrics::{
    compute_characteristics, ActivenessWeights, CharacteristicVector, MetricsError,
};
pub use usefulness::{
    compute_usefulness, extract_core, rank_users, RankedUser, UsefulnessError, WeightVector,
};
