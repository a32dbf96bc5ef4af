//! Linguistic variables over `[0, 1]` with low/medium/high membership functions.
//!
//! Every characteristic gets one [`ThresholdSet`] of eight expert breakpoints
//! that shape three membership functions on the unit interval: a descending
//! "low" shoulder, a trapezoidal "medium", and an ascending "high" shoulder.
//! The breakpoints must satisfy one interleaved ordering chain,
//!
//! ```text
//! 0 <= p_low_1 <= p_med_1 <= p_low_2 <= p_med_2 <= p_med_3 <= p_high_1 <= p_med_4 <= p_high_2 < 1
//! ```
//!
//! which makes adjacent terms overlap pairwise so that every value of the
//! domain belongs to at least one term.

use crate::characteristic::Characteristic;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// A linguistic term: one of the three values a linguistic variable can take.
///
/// The declaration order is the fixed term order; ties between equal degrees
/// resolve to the lower term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Low,
    Medium,
    High,
}

impl Term {
    pub const ALL: [Term; 3] = [Term::Low, Term::Medium, Term::High];

    pub fn name(self) -> &'static str {
        match self {
            Term::Low => "low",
            Term::Medium => "medium",
            Term::High => "high",
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("{name} = {value} but breakpoints must be >= 0")]
    Negative { name: &'static str, value: f64 },
    #[error("ordering violated: requires {left} <= {right}, got {left} = {left_value} > {right} = {right_value}")]
    Ordering {
        left: &'static str,
        left_value: f64,
        right: &'static str,
        right_value: f64,
    },
    #[error("p_high_2 = {value} violates the strict upper bound p_high_2 < 1")]
    UpperBound { value: f64 },
    #[error("degenerate ramp: requires {left} < {right}, got both = {value}")]
    DegenerateRamp {
        left: &'static str,
        right: &'static str,
        value: f64,
    },
    #[error("membership input {0} outside the domain [0, 1]")]
    Domain(f64),
    #[error("no dominant term: all membership degrees are zero")]
    NoDominantTerm,
}

/// The eight expert breakpoints shaping one characteristic's membership
/// functions.
///
/// Field names follow the breakpoint roles: `p_low_*` bound the "low"
/// shoulder, `p_med_*` the "medium" trapezoid, `p_high_*` the "high"
/// shoulder. All lie in `[0, 1)` and interleave per the module ordering
/// chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet {
    pub p_low_1: f64,
    pub p_low_2: f64,
    pub p_med_1: f64,
    pub p_med_2: f64,
    pub p_med_3: f64,
    pub p_med_4: f64,
    pub p_high_1: f64,
    pub p_high_2: f64,
}

impl Default for ThresholdSet {
    /// The documented default breakpoints, also used as the fallback when a
    /// configuration names no set for a characteristic.
    fn default() -> Self {
        ThresholdSet {
            p_low_1: 0.1,
            p_low_2: 0.3,
            p_med_1: 0.2,
            p_med_2: 0.4,
            p_med_3: 0.6,
            p_med_4: 0.8,
            p_high_1: 0.7,
            p_high_2: 0.9,
        }
    }
}

impl ThresholdSet {
    /// Builds and validates a set. Arguments follow field order.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p_low_1: f64,
        p_low_2: f64,
        p_med_1: f64,
        p_med_2: f64,
        p_med_3: f64,
        p_med_4: f64,
        p_high_1: f64,
        p_high_2: f64,
    ) -> Result<Self, FuzzyError> {
        let set = ThresholdSet {
            p_low_1,
            p_low_2,
            p_med_1,
            p_med_2,
            p_med_3,
            p_med_4,
            p_high_1,
            p_high_2,
        };
        set.validate()?;
        Ok(set)
    }

    /// The breakpoints in ordering-chain order, paired with their names.
    fn chain(&self) -> [(&'static str, f64); 8] {
        [
            ("p_low_1", self.p_low_1),
            ("p_med_1", self.p_med_1),
            ("p_low_2", self.p_low_2),
            ("p_med_2", self.p_med_2),
            ("p_med_3", self.p_med_3),
            ("p_high_1", self.p_high_1),
            ("p_med_4", self.p_med_4),
            ("p_high_2", self.p_high_2),
        ]
    }

    /// Checks the ordering chain, the strict unit upper bound, and ramp
    /// non-degeneracy. Reports the first violated constraint, in that order.
    /// NaN never orders, so it always fails here.
    pub fn validate(&self) -> Result<(), FuzzyError> {
        use std::cmp::Ordering;

        if self
            .p_low_1
            .partial_cmp(&0.0)
            .is_none_or(Ordering::is_lt)
        {
            return Err(FuzzyError::Negative {
                name: "p_low_1",
                value: self.p_low_1,
            });
        }
        let chain = self.chain();
        for pair in chain.windows(2) {
            let (left, left_value) = pair[0];
            let (right, right_value) = pair[1];
            if left_value
                .partial_cmp(&right_value)
                .is_none_or(Ordering::is_gt)
            {
                return Err(FuzzyError::Ordering {
                    left,
                    left_value,
                    right,
                    right_value,
                });
            }
        }
        if self
            .p_high_2
            .partial_cmp(&1.0)
            .is_none_or(Ordering::is_ge)
        {
            return Err(FuzzyError::UpperBound {
                value: self.p_high_2,
            });
        }
        // The chain already guarantees <=; equal endpoints would divide by zero.
        let ramps = [
            ("p_low_1", self.p_low_1, "p_low_2", self.p_low_2),
            ("p_med_1", self.p_med_1, "p_med_2", self.p_med_2),
            ("p_med_3", self.p_med_3, "p_med_4", self.p_med_4),
            ("p_high_1", self.p_high_1, "p_high_2", self.p_high_2),
        ];
        for (left, left_value, right, right_value) in ramps {
            if left_value >= right_value {
                return Err(FuzzyError::DegenerateRamp {
                    left,
                    right,
                    value: left_value,
                });
            }
        }
        Ok(())
    }

    /// Membership degrees of `x` under these breakpoints.
    ///
    /// `x` must lie in `[0, 1]` and the set must have passed [`validate`]
    /// (otherwise ramp denominators may be zero).
    ///
    /// [`validate`]: ThresholdSet::validate
    pub fn evaluate(&self, x: f64) -> Result<MembershipDegrees, FuzzyError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(FuzzyError::Domain(x));
        }
        debug_assert!(self.validate().is_ok(), "evaluate on an unvalidated set");
        Ok(MembershipDegrees {
            low: self.low(x),
            medium: self.medium(x),
            high: self.high(x),
        })
    }

    fn low(&self, x: f64) -> f64 {
        if x < self.p_low_1 {
            1.0
        } else if x <= self.p_low_2 {
            (self.p_low_2 - x) / (self.p_low_2 - self.p_low_1)
        } else {
            0.0
        }
    }

    fn medium(&self, x: f64) -> f64 {
        if x < self.p_med_1 {
            0.0
        } else if x < self.p_med_2 {
            (x - self.p_med_1) / (self.p_med_2 - self.p_med_1)
        } else if x <= self.p_med_3 {
            1.0
        } else if x < self.p_med_4 {
            (self.p_med_4 - x) / (self.p_med_4 - self.p_med_3)
        } else {
            0.0
        }
    }

    fn high(&self, x: f64) -> f64 {
        if x < self.p_high_1 {
            0.0
        } else if x < self.p_high_2 {
            (x - self.p_high_1) / (self.p_high_2 - self.p_high_1)
        } else {
            1.0
        }
    }
}

/// The degrees to which one value belongs to each of the three terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipDegrees {
    pub low: f64,
    pub medium: f64,
    pub high: f64,
}

impl MembershipDegrees {
    pub fn degree(&self, term: Term) -> f64 {
        match term {
            Term::Low => self.low,
            Term::Medium => self.medium,
            Term::High => self.high,
        }
    }

    pub fn max_degree(&self) -> f64 {
        self.low.max(self.medium).max(self.high)
    }

    /// The term with the greatest degree; equal degrees resolve to the lower
    /// term. Errors when all three degrees are zero, which a validated
    /// threshold set does not produce for in-domain inputs.
    pub fn dominant_term(&self) -> Result<Term, FuzzyError> {
        let mut best: Option<(Term, f64)> = None;
        for term in Term::ALL {
            let degree = self.degree(term);
            if degree > best.map_or(0.0, |(_, d)| d) {
                best = Some((term, degree));
            }
        }
        best.map(|(term, _)| term).ok_or(FuzzyError::NoDominantTerm)
    }
}

/// A named linguistic variable: the fixed three-term vocabulary over the
/// unit interval, shaped by one threshold set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVariable {
    pub name: String,
    pub thresholds: ThresholdSet,
}

impl LinguisticVariable {
    pub const TERMS: [Term; 3] = Term::ALL;
    pub const DOMAIN: (f64, f64) = (0.0, 1.0);

    pub fn new(name: impl Into<String>, thresholds: ThresholdSet) -> Result<Self, FuzzyError> {
        thresholds.validate()?;
        Ok(LinguisticVariable {
            name: name.into(),
            thresholds,
        })
    }

    pub fn evaluate(&self, x: f64) -> Result<MembershipDegrees, FuzzyError> {
        self.thresholds.evaluate(x)
    }
}

/// Validated threshold sets for all ten characteristics.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ThresholdBank {
    sets: [ThresholdSet; 10],
}

impl ThresholdBank {
    /// A bank using the same validated set for every characteristic.
    pub fn uniform(set: ThresholdSet) -> Result<Self, FuzzyError> {
        set.validate()?;
        Ok(ThresholdBank { sets: [set; 10] })
    }

    pub fn get(&self, characteristic: Characteristic) -> &ThresholdSet {
        &self.sets[characteristic.index()]
    }

    /// Replaces one characteristic's set, revalidating it.
    pub fn set(
        &mut self,
        characteristic: Characteristic,
        set: ThresholdSet,
    ) -> Result<(), FuzzyError> {
        set.validate()?;
        self.sets[characteristic.index()] = set;
        Ok(())
    }

    pub fn variable(&self, characteristic: Characteristic) -> LinguisticVariable {
        LinguisticVariable {
            name: characteristic.name().to_string(),
            thresholds: *self.get(characteristic),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The reference breakpoints exercised throughout the test suite.
    fn fixture() -> ThresholdSet {
        ThresholdSet::new(0.1, 0.3, 0.2, 0.4, 0.6, 0.8, 0.7, 0.9).unwrap()
    }

    #[test]
    fn fixture_is_valid_and_equals_default() {
        assert_eq!(fixture(), ThresholdSet::default());
        assert!(ThresholdSet::default().validate().is_ok());
    }

    #[test]
    fn reversed_pair_is_an_ordering_error() {
        // p_low_1 = 0.3 > p_med_1 = 0.2
        let err = ThresholdSet::new(0.3, 0.35, 0.2, 0.4, 0.6, 0.8, 0.7, 0.9).unwrap_err();
        match err {
            FuzzyError::Ordering { left, right, .. } => {
                assert_eq!((left, right), ("p_low_1", "p_med_1"));
            }
            other => panic!("expected ordering error, got {other:?}"),
        }
    }

    #[test]
    fn unit_upper_bound_is_strict() {
        let err = ThresholdSet::new(0.1, 0.3, 0.2, 0.4, 0.6, 0.8, 0.7, 1.0).unwrap_err();
        assert_eq!(err, FuzzyError::UpperBound { value: 1.0 });
    }

    #[test]
    fn equal_ramp_endpoints_are_a_distinct_error() {
        // Chain holds with p_med_3 = p_med_4 = 0.7 but the medium descent
        // would divide by zero.
        let err = ThresholdSet::new(0.1, 0.3, 0.2, 0.4, 0.7, 0.7, 0.7, 0.9).unwrap_err();
        assert_eq!(
            err,
            FuzzyError::DegenerateRamp {
                left: "p_med_3",
                right: "p_med_4",
                value: 0.7,
            }
        );
    }

    #[test]
    fn negative_breakpoint_is_rejected() {
        let err = ThresholdSet::new(-0.1, 0.3, 0.2, 0.4, 0.6, 0.8, 0.7, 0.9).unwrap_err();
        assert!(matches!(err, FuzzyError::Negative { name: "p_low_1", .. }));
    }

    #[test]
    fn nan_breakpoint_never_validates() {
        let err = ThresholdSet::new(0.1, f64::NAN, 0.2, 0.4, 0.6, 0.8, 0.7, 0.9).unwrap_err();
        assert!(matches!(err, FuzzyError::Ordering { .. }));
    }

    #[test]
    fn evaluate_matches_hand_values() {
        let t = fixture();
        let cases = [
            (0.0, (1.0, 0.0, 0.0)),
            (0.2, (0.5, 0.0, 0.0)),
            (0.5, (0.0, 1.0, 0.0)),
            (0.75, (0.0, 0.25, 0.25)),
            (0.95, (0.0, 0.0, 1.0)),
        ];
        for (x, (low, medium, high)) in cases {
            let d = t.evaluate(x).unwrap();
            assert!((d.low - low).abs() < 1e-12, "low({x}) = {}", d.low);
            assert!((d.medium - medium).abs() < 1e-12, "medium({x}) = {}", d.medium);
            assert!((d.high - high).abs() < 1e-12, "high({x}) = {}", d.high);
        }
    }

    #[test]
    fn boundaries_are_exact() {
        let t = fixture();
        assert_eq!(t.evaluate(0.0).unwrap().low, 1.0);
        assert_eq!(t.evaluate(t.p_high_2).unwrap().high, 1.0);
        assert_eq!(t.evaluate(1.0).unwrap().high, 1.0);
        // Ramp endpoints meet their plateaus without jumps.
        assert_eq!(t.evaluate(t.p_low_1).unwrap().low, 1.0);
        assert_eq!(t.evaluate(t.p_low_2).unwrap().low, 0.0);
        assert_eq!(t.evaluate(t.p_med_2).unwrap().medium, 1.0);
        assert_eq!(t.evaluate(t.p_med_3).unwrap().medium, 1.0);
        assert_eq!(t.evaluate(t.p_med_4).unwrap().medium, 0.0);
    }

    #[test]
    fn out_of_domain_inputs_are_rejected() {
        let t = fixture();
        assert_eq!(t.evaluate(-0.01).unwrap_err(), FuzzyError::Domain(-0.01));
        assert_eq!(t.evaluate(1.01).unwrap_err(), FuzzyError::Domain(1.01));
        assert!(matches!(
            t.evaluate(f64::NAN).unwrap_err(),
            FuzzyError::Domain(_)
        ));
    }

    #[test]
    fn dominant_term_prefers_lower_on_ties() {
        let crisp = MembershipDegrees {
            low: 1.0,
            medium: 0.0,
            high: 0.0,
        };
        assert_eq!(crisp.dominant_term().unwrap(), Term::Low);

        // The fixture's x = 0.75 puts medium and high both at 0.25 (up to
        // rounding); the outcome is medium either by tie-break or by the
        // one-ulp margin.
        let tied = fixture().evaluate(0.75).unwrap();
        assert!((tied.medium - 0.25).abs() < 1e-12);
        assert!((tied.high - 0.25).abs() < 1e-12);
        assert_eq!(tied.dominant_term().unwrap(), Term::Medium);

        // An exact tie resolves to the lower term.
        let exact_tie = MembershipDegrees {
            low: 0.0,
            medium: 0.25,
            high: 0.25,
        };
        assert_eq!(exact_tie.dominant_term().unwrap(), Term::Medium);

        let strict = MembershipDegrees {
            low: 0.0,
            medium: 0.2,
            high: 0.9,
        };
        assert_eq!(strict.dominant_term().unwrap(), Term::High);
    }

    #[test]
    fn all_zero_degrees_have_no_dominant_term() {
        let zero = MembershipDegrees {
            low: 0.0,
            medium: 0.0,
            high: 0.0,
        };
        assert_eq!(zero.dominant_term().unwrap_err(), FuzzyError::NoDominantTerm);
    }

    #[test]
    fn linguistic_variable_has_fixed_terms() {
        let var = LinguisticVariable::new("creativeness", fixture()).unwrap();
        assert_eq!(LinguisticVariable::TERMS, [Term::Low, Term::Medium, Term::High]);
        assert_eq!(LinguisticVariable::DOMAIN, (0.0, 1.0));
        assert_eq!(var.evaluate(0.5).unwrap().medium, 1.0);
    }

    #[test]
    fn bank_defaults_and_overrides() {
        let mut bank = ThresholdBank::default();
        assert_eq!(*bank.get(Characteristic::Loyalty), ThresholdSet::default());

        let custom = ThresholdSet::new(0.05, 0.25, 0.15, 0.35, 0.55, 0.75, 0.65, 0.85).unwrap();
        bank.set(Characteristic::Loyalty, custom).unwrap();
        assert_eq!(*bank.get(Characteristic::Loyalty), custom);
        assert_eq!(*bank.get(Characteristic::Creativeness), ThresholdSet::default());

        let bad = ThresholdSet {
            p_high_2: 1.5,
            ..ThresholdSet::default()
        };
        assert!(bank.set(Characteristic::Loyalty, bad).is_err());
        assert_eq!(*bank.get(Characteristic::Loyalty), custom);

        assert_eq!(bank.variable(Characteristic::Loyalty).name, "loyalty");
    }

    /// A random valid threshold set: eight sorted draws assigned in chain
    /// order, rejecting the measure-zero case of duplicate values so every
    /// ramp is strict.
    fn arb_thresholds() -> impl Strategy<Value = ThresholdSet> {
        proptest::collection::vec(0.0..0.999f64, 8)
            .prop_filter("breakpoints must be distinct", |v| {
                let mut s = v.clone();
                s.sort_by(f64::total_cmp);
                s.windows(2).all(|w| w[0] < w[1])
            })
            .prop_map(|mut v| {
                v.sort_by(f64::total_cmp);
                ThresholdSet {
                    p_low_1: v[0],
                    p_med_1: v[1],
                    p_low_2: v[2],
                    p_med_2: v[3],
                    p_med_3: v[4],
                    p_high_1: v[5],
                    p_med_4: v[6],
                    p_high_2: v[7],
                }
            })
    }

    proptest! {
        #[test]
        fn generated_sets_validate(t in arb_thresholds()) {
            prop_assert!(t.validate().is_ok());
        }

        #[test]
        fn degrees_stay_in_unit_range(t in arb_thresholds(), x in 0.0..=1.0f64) {
            let d = t.evaluate(x).unwrap();
            for term in Term::ALL {
                let v = d.degree(term);
                prop_assert!((0.0..=1.0).contains(&v), "{term} degree {v} for x = {x}");
            }
        }

        #[test]
        fn every_point_is_covered(t in arb_thresholds(), x in 0.0..=1.0f64) {
            prop_assert!(t.evaluate(x).unwrap().max_degree() > 0.0);
        }

        #[test]
        fn shoulders_are_monotone_and_medium_unimodal(
            t in arb_thresholds(),
            mut xs in proptest::collection::vec(0.0..=1.0f64, 2..80),
        ) {
            xs.sort_by(f64::total_cmp);
            let degrees: Vec<MembershipDegrees> =
                xs.iter().map(|&x| t.evaluate(x).unwrap()).collect();
            let mut medium_falling = false;
            for pair in degrees.windows(2) {
                prop_assert!(pair[1].low <= pair[0].low, "low must not increase");
                prop_assert!(pair[1].high >= pair[0].high, "high must not decrease");
                if pair[1].medium < pair[0].medium {
                    medium_falling = true;
                } else if medium_falling {
                    prop_assert!(
                        pair[1].medium <= pair[0].medium,
                        "medium rose again after falling"
                    );
                }
            }
        }

        #[test]
        fn evaluation_is_lipschitz(
            t in arb_thresholds(),
            x in 0.0..=1.0f64,
            step in 1e-9..0.01f64,
        ) {
            let y = (x + step).min(1.0);
            let ramp_widths = [
                t.p_low_2 - t.p_low_1,
                t.p_med_2 - t.p_med_1,
                t.p_med_4 - t.p_med_3,
                t.p_high_2 - t.p_high_1,
            ];
            let lipschitz = 1.0 / ramp_widths.into_iter().fold(f64::INFINITY, f64::min);
            let a = t.evaluate(x).unwrap();
            let b = t.evaluate(y).unwrap();
            let bound = lipschitz * (y - x) + 1e-9;
            for term in Term::ALL {
                let delta = (a.degree(term) - b.degree(term)).abs();
                prop_assert!(delta <= bound, "{term} jumped by {delta} over {}", y - x);
            }
        }
    }
}
