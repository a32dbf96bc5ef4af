//! The weighted usefulness score, ranking, and core extraction.

use crate::classify::{ClassAssignment, UserClass};
use crate::metrics::{CharacteristicVector, SIMPLEX_TOLERANCE};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UsefulnessError {
    #[error("usefulness weight {name} is negative ({value})")]
    NegativeWeight { name: &'static str, value: f64 },
    #[error("usefulness weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("scores and assignments disagree on user '{login}'")]
    KeySetMismatch { login: String },
    #[error("core threshold {0} outside [0, 1]")]
    ThresholdOutOfRange(f64),
}

/// The five usefulness coefficients, one per top-level characteristic.
/// A simplex: non-negative, summing to 1, so the score stays in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub c_activeness: f64,
    pub c_attractiveness: f64,
    pub c_creativeness: f64,
    pub c_reactiveness: f64,
    pub c_loyalty: f64,
}

impl Default for WeightVector {
    fn default() -> Self {
        WeightVector {
            c_activeness: 0.2,
            c_attractiveness: 0.2,
            c_creativeness: 0.2,
            c_reactiveness: 0.2,
            c_loyalty: 0.2,
        }
    }
}

impl WeightVector {
    pub fn new(
        c_activeness: f64,
        c_attractiveness: f64,
        c_creativeness: f64,
        c_reactiveness: f64,
        c_loyalty: f64,
    ) -> Result<Self, UsefulnessError> {
        let weights = WeightVector {
            c_activeness,
            c_attractiveness,
            c_creativeness,
            c_reactiveness,
            c_loyalty,
        };
        weights.validate()?;
        Ok(weights)
    }

    fn entries(&self) -> [(&'static str, f64); 5] {
        [
            ("c_activeness", self.c_activeness),
            ("c_attractiveness", self.c_attractiveness),
            ("c_creativeness", self.c_creativeness),
            ("c_reactiveness", self.c_reactiveness),
            ("c_loyalty", self.c_loyalty),
        ]
    }

    pub fn validate(&self) -> Result<(), UsefulnessError> {
        for (name, value) in self.entries() {
            if value.is_nan() || value < 0.0 {
                return Err(UsefulnessError::NegativeWeight { name, value });
            }
        }
        let sum: f64 = self.entries().iter().map(|(_, v)| v).sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(UsefulnessError::WeightSum { sum });
        }
        Ok(())
    }
}

/// The weighted usefulness of one user: the dot product of the simplex
/// weights with (total activeness, attractiveness, creativeness,
/// reactiveness, loyalty). Always in `[0, 1]` for in-range characteristics.
pub fn compute_usefulness(
    cv: &CharacteristicVector,
    weights: &WeightVector,
) -> Result<f64, UsefulnessError> {
    weights.validate()?;
    Ok(weights.c_activeness * cv.activeness_total
        + weights.c_attractiveness * cv.attractiveness
        + weights.c_creativeness * cv.creativeness
        + weights.c_reactiveness * cv.reactiveness
        + weights.c_loyalty * cv.loyalty)
}

/// One row of the usefulness ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedUser {
    pub login: String,
    pub usefulness: f64,
    pub rank: u32,
    pub class: Option<UserClass>,
}

/// Ranks users by usefulness, descending; equal scores order by login so
/// the ranking is a deterministic total order with ranks 1..=N.
pub fn rank_users(
    scores: &BTreeMap<String, f64>,
    assignments: &BTreeMap<String, ClassAssignment>,
) -> Result<Vec<RankedUser>, UsefulnessError> {
    for login in scores.keys() {
        if !assignments.contains_key(login) {
            return Err(UsefulnessError::KeySetMismatch {
                login: login.clone(),
            });
        }
    }
    for login in assignments.keys() {
        if !scores.contains_key(login) {
            return Err(UsefulnessError::KeySetMismatch {
                login: login.clone(),
            });
        }
    }

    let mut ranked: Vec<RankedUser> = scores
        .iter()
        .map(|(login, score)| RankedUser {
            login: login.clone(),
            usefulness: *score,
            rank: 0,
            class: assignments[login].class,
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.usefulness
            .partial_cmp(&a.usefulness)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.login.cmp(&b.login))
    });
    for (index, user) in ranked.iter_mut().enumerate() {
        user.rank = index as u32 + 1;
    }
    Ok(ranked)
}

/// The ranked prefix whose usefulness meets `threshold`: the community core.
pub fn extract_core(
    ranked: &[RankedUser],
    threshold: f64,
) -> Result<Vec<RankedUser>, UsefulnessError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(UsefulnessError::ThresholdOutOfRange(threshold));
    }
    Ok(ranked
        .iter()
        .take_while(|user| user.usefulness >= threshold)
        .cloned()
        .collect())
}
