//! Normalization of raw activity counts into the ten characteristic scores.
//!
//! Every characteristic is a dimensionless ratio in `[0, 1]`: the activeness
//! scores are the user's share of each community activity kind, and the
//! remaining four relate what a user received or gave to the relevant
//! denominator. A ratio with a zero denominator is defined as 0 — the user
//! simply exhibits none of that behavior — which keeps every score total
//! and in range.

use crate::characteristic::Characteristic;
use crate::ingest::{ActivityCounts, CommunityTotals};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for weight simplexes summing to one.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("community totals invalid: member_count is zero")]
    EmptyCommunity,
    #[error("activeness weight {name} is negative ({value})")]
    NegativeWeight { name: &'static str, value: f64 },
    #[error("activeness weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
}

/// Mixing weights for the five activity kinds inside total activeness.
/// A simplex: non-negative, summing to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActivenessWeights {
    pub w_thread: f64,
    pub w_poll: f64,
    pub w_post: f64,
    pub w_vote: f64,
    pub w_feedback: f64,
}

impl Default for ActivenessWeights {
    fn default() -> Self {
        ActivenessWeights {
            w_thread: 0.2,
            w_poll: 0.2,
            w_post: 0.2,
            w_vote: 0.2,
            w_feedback: 0.2,
        }
    }
}

impl ActivenessWeights {
    pub fn new(
        w_thread: f64,
        w_poll: f64,
        w_post: f64,
        w_vote: f64,
        w_feedback: f64,
    ) -> Result<Self, MetricsError> {
        let weights = ActivenessWeights {
            w_thread,
            w_poll,
            w_post,
            w_vote,
            w_feedback,
        };
        weights.validate()?;
        Ok(weights)
    }

    fn entries(&self) -> [(&'static str, f64); 5] {
        [
            ("w_thread", self.w_thread),
            ("w_poll", self.w_poll),
            ("w_post", self.w_post),
            ("w_vote", self.w_vote),
            ("w_feedback", self.w_feedback),
        ]
    }

    pub fn validate(&self) -> Result<(), MetricsError> {
        for (name, value) in self.entries() {
            if value.is_nan() || value < 0.0 {
                return Err(MetricsError::NegativeWeight { name, value });
            }
        }
        let sum: f64 = self.entries().iter().map(|(_, v)| v).sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(MetricsError::WeightSum { sum });
        }
        Ok(())
    }
}

/// The ten normalized characteristic scores of one user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicVector {
    pub activeness_thread: f64,
    pub activeness_poll: f64,
    pub activeness_post: f64,
    pub activeness_vote: f64,
    pub activeness_feedback: f64,
    pub activeness_total: f64,
    pub creativeness: f64,
    pub attractiveness: f64,
    pub reactiveness: f64,
    pub loyalty: f64,
}

impl CharacteristicVector {
    pub fn get(&self, characteristic: Characteristic) -> f64 {
        match characteristic {
            Characteristic::ActivenessThread => self.activeness_thread,
            Characteristic::ActivenessPoll => self.activeness_poll,
            Characteristic::ActivenessPost => self.activeness_post,
            Characteristic::ActivenessVote => self.activeness_vote,
            Characteristic::ActivenessFeedback => self.activeness_feedback,
            Characteristic::ActivenessTotal => self.activeness_total,
            Characteristic::Creativeness => self.creativeness,
            Characteristic::Attractiveness => self.attractiveness,
            Characteristic::Reactiveness => self.reactiveness,
            Characteristic::Loyalty => self.loyalty,
        }
    }
}

fn ratio(numerator: u64, denominator: u64) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// Computes a user's characteristic vector from their counts and the
/// community totals.
///
/// Expects totals produced by [`aggregate`](crate::ingest::aggregate) (or
/// consistent with them); counts exceeding their totals would push shares
/// past 1.
pub fn compute_characteristics(
    counts: &ActivityCounts,
    totals: &CommunityTotals,
    weights: &ActivenessWeights,
) -> Result<CharacteristicVector, MetricsError> {
    weights.validate()?;
    if totals.member_count == 0 {
        return Err(MetricsError::EmptyCommunity);
    }

    let activeness_thread = ratio(counts.threads_created, totals.total_threads);
    let activeness_poll = ratio(counts.polls_created, totals.total_polls);
    let activeness_post = ratio(counts.posts_created, totals.total_posts);
    let activeness_vote = ratio(counts.votes_cast, totals.total_votes);
    let activeness_feedback = ratio(counts.feedback_given, totals.total_feedback);
    let activeness_total = weights.w_thread * activeness_thread
        + weights.w_poll * activeness_poll
        + weights.w_post * activeness_post
        + weights.w_vote * activeness_vote
        + weights.w_feedback * activeness_feedback;

    Ok(CharacteristicVector {
        activeness_thread,
        activeness_poll,
        activeness_post,
        activeness_vote,
        activeness_feedback,
        activeness_total,
        creativeness: ratio(counts.positive_feedback_received, counts.total_feedback_received),
        attractiveness: ratio(counts.distinct_reactors, totals.member_count - 1),
        reactiveness: ratio(counts.replies_authored, counts.posts_created),
        loyalty: ratio(counts.positive_feedback_given, counts.feedback_given),
    })
}
