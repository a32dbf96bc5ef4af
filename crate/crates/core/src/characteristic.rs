//! The ten behavioral characteristics a user is scored on.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// One of the ten per-user characteristics, each normalized to `[0, 1]`.
///
/// The five activeness sub-scores measure how much of each activity kind a
/// user contributes relative to the whole community; the remaining five are
/// the top-level characteristics the production rules range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    ActivenessThread,
    ActivenessPoll,
    ActivenessPost,
    ActivenessVote,
    ActivenessFeedback,
    ActivenessTotal,
    Creativeness,
    Attractiveness,
    Reactiveness,
    Loyalty,
}

impl Characteristic {
    /// All ten characteristics, in canonical order.
    pub const ALL: [Characteristic; 10] = [
        Characteristic::ActivenessThread,
        Characteristic::ActivenessPoll,
        Characteristic::ActivenessPost,
        Characteristic::ActivenessVote,
        Characteristic::ActivenessFeedback,
        Characteristic::ActivenessTotal,
        Characteristic::Creativeness,
        Characteristic::Attractiveness,
        Characteristic::Reactiveness,
        Characteristic::Loyalty,
    ];

    /// The five top-level characteristics used by classification rules and
    /// the usefulness score. "Activeness" there always means the total.
    pub const TOP_LEVEL: [Characteristic; 5] = [
        Characteristic::ActivenessTotal,
        Characteristic::Creativeness,
        Characteristic::Attractiveness,
        Characteristic::Reactiveness,
        Characteristic::Loyalty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Characteristic::ActivenessThread => "activeness_thread",
            Characteristic::ActivenessPoll => "activeness_poll",
            Characteristic::ActivenessPost => "activeness_post",
            Characteristic::ActivenessVote => "activeness_vote",
            Characteristic::ActivenessFeedback => "activeness_feedback",
            Characteristic::ActivenessTotal => "activeness_total",
            Characteristic::Creativeness => "creativeness",
            Characteristic::Attractiveness => "attractiveness",
            Characteristic::Reactiveness => "reactiveness",
            Characteristic::Loyalty => "loyalty",
        }
    }

    pub(crate) fn index(self) -> usize {
        Characteristic::ALL
            .iter()
            .position(|c| *c == self)
            .expect("ALL lists every variant")
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown characteristic '{0}'")]
pub struct UnknownCharacteristic(pub String);

impl FromStr for Characteristic {
    type Err = UnknownCharacteristic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Characteristic::ALL
            .iter()
            .find(|c| c.name() == s)
            .copied()
            .ok_or_else(|| UnknownCharacteristic(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Characteristic::ALL {
            assert_eq!(c.name().parse::<Characteristic>().unwrap(), c);
        }
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!("charisma".parse::<Characteristic>().is_err());
    }

    #[test]
    fn serde_uses_snake_case_names() {
        let json = serde_json::to_string(&Characteristic::ActivenessTotal).unwrap();
        assert_eq!(json, "\"activeness_total\"");
        let back: Characteristic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Characteristic::ActivenessTotal);
    }
}
