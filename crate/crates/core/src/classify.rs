//! Production-rule classification of users into behavioral classes.
//!
//! Rules are crisp-term antecedents over the five top-level characteristics.
//! Against fuzzy membership degrees a rule fires with strength
//! `min over characteristics (max over allowed terms)`; the class of the
//! strongest rule wins, ties going to the lower priority number. A user no
//! rule fires for stays unclassified rather than being forced into a class.

use crate::characteristic::Characteristic;
use crate::fuzzy::{FuzzyError, MembershipDegrees, Term, ThresholdBank};
use crate::metrics::CharacteristicVector;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// The six behavioral classes, in rule-priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UserClass {
    Activist,
    Moderator,
    Flamer,
    Author,
    Critic,
    Reader,
}

impl UserClass {
    pub const ALL: [UserClass; 6] = [
        UserClass::Activist,
        UserClass::Moderator,
        UserClass::Flamer,
        UserClass::Author,
        UserClass::Critic,
        UserClass::Reader,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UserClass::Activist => "Activist",
            UserClass::Moderator => "Moderator",
            UserClass::Flamer => "Flamer",
            UserClass::Author => "Author",
            UserClass::Critic => "Critic",
            UserClass::Reader => "Reader",
        }
    }
}

impl fmt::Display for UserClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("rule for {class} names {characteristic} but no degrees were supplied for it")]
    MissingCharacteristic {
        class: UserClass,
        characteristic: Characteristic,
    },
    #[error("ruleset contains no rules")]
    EmptyRuleset,
    #[error("rule for {class} has an empty antecedent")]
    EmptyAntecedent { class: UserClass },
    #[error("rule for {class} allows no terms for {characteristic}")]
    EmptyTermSet {
        class: UserClass,
        characteristic: Characteristic,
    },
    #[error("duplicate rule priority {priority}")]
    DuplicatePriority { priority: u8 },
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

/// One production rule: the user belongs to `class` when every named
/// characteristic's term lies in its allowed set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rule {
    pub class: UserClass,
    pub priority: u8,
    pub antecedent: BTreeMap<Characteristic, BTreeSet<Term>>,
}

/// A validated rule list: antecedents non-empty, term sets non-empty,
/// priorities unique.
#[derive(Debug, Clone, PartialEq)]
pub struct Ruleset {
    rules: Vec<Rule>,
}

impl Ruleset {
    pub fn new(rules: Vec<Rule>) -> Result<Self, ClassifyError> {
        if rules.is_empty() {
            return Err(ClassifyError::EmptyRuleset);
        }
        let mut priorities = BTreeSet::new();
        for rule in &rules {
            if rule.antecedent.is_empty() {
                return Err(ClassifyError::EmptyAntecedent { class: rule.class });
            }
            for (characteristic, allowed) in &rule.antecedent {
                if allowed.is_empty() {
                    return Err(ClassifyError::EmptyTermSet {
                        class: rule.class,
                        characteristic: *characteristic,
                    });
                }
            }
            if !priorities.insert(rule.priority) {
                return Err(ClassifyError::DuplicatePriority {
                    priority: rule.priority,
                });
            }
        }
        Ok(Ruleset { rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
}

fn rule(class: UserClass, priority: u8, antecedent: &[(Characteristic, &[Term])]) -> Rule {
    Rule {
        class,
        priority,
        antecedent: antecedent
            .iter()
            .map(|(characteristic, terms)| (*characteristic, terms.iter().copied().collect()))
            .collect(),
    }
}

/// The six stock rules, in priority order. "Activeness" in an antecedent
/// always means the total activeness.
pub fn default_ruleset() -> Ruleset {
    use Characteristic::{ActivenessTotal, Attractiveness, Creativeness, Loyalty, Reactiveness};
    use Term::{High, Low, Medium};

    Ruleset::new(vec![
        rule(
            UserClass::Activist,
            1,
            &[
                (ActivenessTotal, &[Medium, High]),
                (Creativeness, &[Medium, High]),
                (Reactiveness, &[Low, Medium]),
            ],
        ),
        rule(
            UserClass::Moderator,
            2,
            &[
                (ActivenessTotal, &[Medium, High]),
                (Reactiveness, &[High]),
                (Loyalty, &[Medium, High]),
            ],
        ),
        rule(
            UserClass::Flamer,
            3,
            &[
                (ActivenessTotal, &[Medium, High]),
                (Creativeness, &[Low]),
                (Loyalty, &[Low]),
            ],
        ),
        rule(
            UserClass::Author,
            4,
            &[
                (ActivenessTotal, &[Low]),
                (Creativeness, &[Medium, High]),
                (Attractiveness, &[Medium, High]),
                (Reactiveness, &[Low]),
            ],
        ),
        rule(
            UserClass::Critic,
            5,
            &[
                (Creativeness, &[Low]),
                (Reactiveness, &[Low, High]),
                (Attractiveness, &[High]),
                (Loyalty, &[Low]),
            ],
        ),
        rule(
            UserClass::Reader,
            6,
            &[
                (ActivenessTotal, &[Low]),
                (Creativeness, &[Low]),
                (Attractiveness, &[Low, Medium]),
                (Reactiveness, &[Low]),
            ],
        ),
    ])
    .expect("stock rules are valid")
}

/// Degree to which `memberships` satisfies the rule antecedent: fuzzy AND
/// (min) across characteristics of the fuzzy OR (max) across allowed terms.
pub fn firing_strength(
    rule: &Rule,
    memberships: &BTreeMap<Characteristic, MembershipDegrees>,
) -> Result<f64, ClassifyError> {
    let mut strength = 1.0_f64;
    for (characteristic, allowed) in &rule.antecedent {
        let degrees =
            memberships
                .get(characteristic)
                .ok_or(ClassifyError::MissingCharacteristic {
                    class: rule.class,
                    characteristic: *characteristic,
                })?;
        let best = allowed
            .iter()
            .map(|term| degrees.degree(*term))
            .fold(0.0, f64::max);
        strength = strength.min(best);
    }
    Ok(strength)
}

/// One user's classification outcome: the winning class (if any rule fired),
/// per-class firing strengths, and the dominant-term trace behind them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassAssignment {
    pub login: String,
    pub class: Option<UserClass>,
    pub firing_strengths: BTreeMap<UserClass, f64>,
    pub dominant_terms: BTreeMap<Characteristic, Term>,
}

/// Classifies one user: evaluates top-level membership degrees, fires every
/// rule, and assigns the class of the strongest rule (ties to the lowest
/// priority number). All strengths zero leaves the user unclassified.
pub fn classify_user(
    login: &str,
    cv: &CharacteristicVector,
    thresholds: &ThresholdBank,
    rules: &Ruleset,
) -> Result<ClassAssignment, ClassifyError> {
    let mut memberships = BTreeMap::new();
    let mut dominant_terms = BTreeMap::new();
    for characteristic in Characteristic::TOP_LEVEL {
        let degrees = thresholds
            .get(characteristic)
            .evaluate(cv.get(characteristic))?;
        dominant_terms.insert(characteristic, degrees.dominant_term()?);
        memberships.insert(characteristic, degrees);
    }

    let mut firing_strengths: BTreeMap<UserClass, f64> = BTreeMap::new();
    let mut winner: Option<(&Rule, f64)> = None;
    for rule in rules.rules() {
        let strength = firing_strength(rule, &memberships)?;
        let entry = firing_strengths.entry(rule.class).or_insert(0.0);
        *entry = entry.max(strength);
        winner = match winner {
            None => Some((rule, strength)),
            Some((best_rule, best)) => {
                if strength > best || (strength == best && rule.priority < best_rule.priority) {
                    Some((rule, strength))
                } else {
                    Some((best_rule, best))
                }
            }
        };
    }

    let class = winner.and_then(|(rule, strength)| (strength > 0.0).then_some(rule.class));
    Ok(ClassAssignment {
        login: login.to_string(),
        class,
        firing_strengths,
        dominant_terms,
    })
}
