//! Constraint sets over `(R1, R2, L1, L2, D)` and the generic geometry on them.
//!
//! Every bound in the crate is a list of half-spaces in the canonical form
//! `a · (R1, R2, L1, L2) + d · g(D) >= rhs`, with `a` in `{0, 1}^4`, `d` in
//! `{0, 1}` and `g` either the identity (log-loss, general distortion) or
//! `½ log2 D` (quadratic).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default slack shared by feasibility and dominance checks.
pub const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistortionTransform {
    Identity,
    HalfLog,
}

impl DistortionTransform {
    pub fn apply(self, d: f64) -> f64 {
        match self {
            DistortionTransform::Identity => d,
            DistortionTransform::HalfLog => 0.5 * d.log2(),
        }
    }

    /// Smallest `D` with `g(D) >= t`.
    pub fn invert(self, t: f64) -> f64 {
        match self {
            DistortionTransform::Identity => t,
            DistortionTransform::HalfLog => (2.0 * t).exp2(),
        }
    }
}

/// A point `(R1, R2, L1, L2, D)`. Rates may be `+inf` to mean "unconstrained".
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateTuple {
    pub r1: f64,
    pub r2: f64,
    pub l1: f64,
    pub l2: f64,
    pub d: f64,
}

impl RateTuple {
    pub const FIELDS: [&'static str; 5] = ["R1", "R2", "L1", "L2", "D"];

    pub fn new(r1: f64, r2: f64, l1: f64, l2: f64, d: f64) -> Self {
        Self { r1, r2, l1, l2, d }
    }

    /// `(0, 0, 0, 0, d)`
    pub fn distortion_only(d: f64) -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, d)
    }

    pub fn coords(&self) -> [f64; 5] {
        [self.r1, self.r2, self.l1, self.l2, self.d]
    }

    pub fn rates(&self) -> [f64; 4] {
        [self.r1, self.r2, self.l1, self.l2]
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in Self::FIELDS.iter().zip(self.coords()) {
            if v.is_nan() || v < 0.0 {
                return Err(Error::InvalidTuple {
                    field,
                    reason: format!("must be non-negative, got {v}"),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for RateTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(R1={:.6}, R2={:.6}, L1={:.6}, L2={:.6}, D={:.6})",
            self.r1, self.r2, self.l1, self.l2, self.d
        )
    }
}

/// One half-space `a · (R1, R2, L1, L2) + d · g(D) >= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub label: String,
    /// Which of `(R1, R2, L1, L2)` carry a unit coefficient.
    pub rates: [bool; 4],
    pub distortion: bool,
    pub transform: DistortionTransform,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(
        label: impl Into<String>,
        rates: [bool; 4],
        distortion: bool,
        transform: DistortionTransform,
        rhs: f64,
    ) -> Self {
        Self {
            label: label.into(),
            rates,
            distortion,
            transform,
            rhs,
        }
    }

    /// `a · (R1, R2, L1, L2)`, skipping zero coefficients so `+inf` rates stay finite-safe.
    pub fn rate_sum(&self, rates: [f64; 4]) -> f64 {
        self.rates
            .iter()
            .zip(rates)
            .filter(|(on, _)| **on)
            .map(|(_, r)| r)
            .sum()
    }

    pub fn lhs(&self, p: &RateTuple) -> f64 {
        let mut lhs = self.rate_sum(p.rates());
        if self.distortion {
            lhs += self.transform.apply(p.d);
        }
        lhs
    }

    pub fn slack(&self, p: &RateTuple) -> f64 {
        let lhs = self.lhs(p);
        if lhs == f64::INFINITY {
            return f64::INFINITY;
        }
        lhs - self.rhs
    }

    /// Smallest `D` this constraint allows at the given rates; `-inf` when it
    /// does not involve `D` or is slack for every `D`.
    pub fn distortion_lower_bound(&self, rates: [f64; 4]) -> f64 {
        if !self.distortion {
            return f64::NEG_INFINITY;
        }
        let sum = self.rate_sum(rates);
        if sum == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        self.transform.invert(self.rhs - sum)
    }

    /// Human-readable `R1 + L2 + D >= 1.234567`.
    pub fn describe(&self) -> String {
        let mut terms: Vec<&str> = RateTuple::FIELDS[..4]
            .iter()
            .zip(self.rates)
            .filter(|(_, on)| *on)
            .map(|(n, _)| *n)
            .collect();
        if self.distortion {
            terms.push(match self.transform {
                DistortionTransform::Identity => "D",
                DistortionTransform::HalfLog => "½log2(D)",
            });
        }
        let lhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        format!("{lhs} >= {:.9}", self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn new(constraints: Vec<Constraint>) -> Self {
        Self { constraints }
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Constraint> {
        self.constraints.iter()
    }

    pub fn get(&self, label: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.label == label)
    }

    pub fn rhs(&self, label: &str) -> Option<f64> {
        self.get(label).map(|c| c.rhs)
    }

    pub fn uses_half_log(&self) -> bool {
        self.constraints
            .iter()
            .any(|c| c.distortion && c.transform == DistortionTransform::HalfLog)
    }

    /// Constraints whose rate part avoids every coordinate flagged in `dropped`.
    pub fn without_rates(&self, dropped: [bool; 4]) -> Self {
        Self::new(
            self.constraints
                .iter()
                .filter(|c| !c.rates.iter().zip(dropped).any(|(a, b)| *a && b))
                .cloned()
                .collect(),
        )
    }

    /// Smallest `D` compatible with every constraint at the given rates.
    pub fn min_distortion(&self, rates: [f64; 4]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.distortion_lower_bound(rates))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Aligned text table, one line per constraint.
    pub fn to_table(&self) -> String {
        let width = self.constraints.iter().map(|c| c.label.len()).max().unwrap_or(0);
        self.constraints
            .iter()
            .map(|c| format!("{:<width$}  {}\n", c.label, c.describe()))
            .collect()
    }
}

impl<'a> IntoIterator for &'a ConstraintSet {
    type Item = &'a Constraint;
    type IntoIter = std::slice::Iter<'a, Constraint>;

    fn into_iter(self) -> Self::IntoIter {
        self.constraints.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Slack of every constraint, in set order.
    pub slacks: Vec<Violation>,
    pub violations: Vec<Violation>,
    /// Largest `-slack` over violated constraints; 0 when feasible.
    pub max_violation: f64,
}

impl FeasibilityReport {
    pub fn slack(&self, label: &str) -> Option<f64> {
        self.slacks.iter().find(|s| s.label == label).map(|s| s.slack)
    }

    /// Labels with `|slack| <= eps`.
    pub fn binding(&self, eps: f64) -> Vec<String> {
        self.slacks
            .iter()
            .filter(|s| s.slack.abs() <= eps)
            .map(|s| s.label.clone())
            .collect()
    }
}

/// Per-constraint slack `a·x + d·g(D) - rhs`; a violation is any slack below `-eps`.
pub fn evaluate(cs: &ConstraintSet, p: &RateTuple, eps: f64) -> Result<FeasibilityReport> {
    p.validate()?;
    if cs.uses_half_log() && p.d <= 0.0 {
        return Err(Error::InvalidTuple {
            field: "D",
            reason: "must be strictly positive under quadratic distortion".into(),
        });
    }
    let slacks: Vec<Violation> = cs
        .iter()
        .map(|c| Violation {
            label: c.label.clone(),
            slack: c.slack(p),
        })
        .collect();
    let violations: Vec<Violation> = slacks.iter().filter(|s| !(s.slack >= -eps)).cloned().collect();
    let max_violation = violations.iter().map(|v| -v.slack).fold(0.0, f64::max);
    Ok(FeasibilityReport {
        feasible: violations.is_empty(),
        slacks,
        violations,
        max_violation,
    })
}

/// `p` dominates `q` when `p <= q + eps` in all five coordinates.
pub fn dominates(p: &RateTuple, q: &RateTuple, eps: f64) -> bool {
    p.coords().iter().zip(q.coords()).all(|(a, b)| *a <= b + eps)
}

/// Largest `p_i - q_i` and the coordinate where it occurs.
pub fn worst_excess(p: &RateTuple, q: &RateTuple) -> (&'static str, f64) {
    RateTuple::FIELDS
        .iter()
        .zip(p.coords().iter().zip(q.coords()))
        .map(|(name, (a, b))| (*name, a - b))
        .fold(("R1", f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
}

/// Indices of the points not dominated by any other point, in input order.
///
/// Points that coincide within `eps` are reported once (the earliest).
pub fn pareto_filter_indices(points: &[RateTuple], eps: f64) -> Vec<usize> {
    let total = |p: &RateTuple| p.coords().iter().sum::<f64>();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| total(&points[a]).total_cmp(&total(&points[b])).then(a.cmp(&b)));

    let mut front: Vec<usize> = Vec::new();
    for i in order {
        if !front.iter().any(|&j| dominates(&points[j], &points[i], eps)) {
            front.push(i);
        }
    }
    front.sort_unstable();
    front
}

pub fn pareto_filter(points: &[RateTuple], eps: f64) -> Vec<RateTuple> {
    pareto_filter_indices(points, eps)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(label: &str, rates: [bool; 4], d: bool, rhs: f64) -> Constraint {
        Constraint::new(label, rates, d, DistortionTransform::Identity, rhs)
    }

    #[test]
    fn empty_set_is_feasible() {
        let r = evaluate(&ConstraintSet::default(), &RateTuple::distortion_only(1.0), SLACK).unwrap();
        assert!(r.feasible);
        assert!(r.slacks.is_empty());
    }

    #[test]
    fn binding_point_has_zero_slack() {
        let cs = ConstraintSet::new(vec![c("R1+L2", [true, false, false, true], true, 2.5)]);
        let p = RateTuple::new(1.0, 0.0, 0.0, 0.5, 1.0);
        let r = evaluate(&cs, &p, SLACK).unwrap();
        assert!(r.feasible);
        assert_eq!(r.slack("R1+L2"), Some(0.0));
        assert_eq!(r.binding(SLACK), vec!["R1+L2".to_string()]);
    }

    #[test]
    fn slacks_match_hand_arithmetic() {
        let cs = ConstraintSet::new(vec![
            c("a", [true, true, false, false], false, 1.0),
            c("b", [false, false, true, false], true, 3.0),
            Constraint::new("c", [false; 4], true, DistortionTransform::HalfLog, -1.0),
        ]);
        let p = RateTuple::new(0.25, 0.5, 1.0, 0.0, 0.5);
        let r = evaluate(&cs, &p, SLACK).unwrap();
        assert_eq!(r.slack("a"), Some(-0.25));
        assert_eq!(r.slack("b"), Some(-1.5));
        // ½ log2(0.5) = -0.5
        assert_eq!(r.slack("c"), Some(0.5));
        assert!(!r.feasible);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.max_violation, 1.5);
    }

    #[test]
    fn quadratic_requires_positive_distortion() {
        let cs = ConstraintSet::new(vec![Constraint::new(
            "D",
            [false; 4],
            true,
            DistortionTransform::HalfLog,
            0.0,
        )]);
        let err = evaluate(&cs, &RateTuple::distortion_only(0.0), SLACK).unwrap_err();
        assert!(matches!(err, Error::InvalidTuple { field: "D", .. }));
        assert!(evaluate(&cs, &RateTuple::new(-1.0, 0.0, 0.0, 0.0, 1.0), SLACK).is_err());
    }

    #[test]
    fn infinite_rates_satisfy_their_constraints() {
        let cs = ConstraintSet::new(vec![c("L2", [false, false, false, true], true, 5.0)]);
        let p = RateTuple::new(0.0, 0.0, 0.0, f64::INFINITY, 0.0);
        assert!(evaluate(&cs, &p, SLACK).unwrap().feasible);
        assert_eq!(cs.min_distortion(p.rates()), f64::NEG_INFINITY);
    }

    #[test]
    fn dominance_basics() {
        let p = RateTuple::new(1.0, 1.0, 1.0, 1.0, 1.0);
        assert!(dominates(&p, &p, SLACK));
        let better = RateTuple { r2: 0.5, ..p };
        assert!(dominates(&better, &p, SLACK));
        assert!(!dominates(&p, &better, SLACK));
        let other = RateTuple { r1: 0.5, d: 2.0, ..p };
        assert!(!dominates(&better, &other, SLACK));
        assert!(!dominates(&other, &better, SLACK));
        let (field, excess) = worst_excess(&other, &better);
        assert_eq!(field, "D");
        assert_eq!(excess, 1.0);
    }

    #[test]
    fn pareto_small_cases() {
        let p = RateTuple::new(1.0, 2.0, 3.0, 4.0, 5.0);
        assert_eq!(pareto_filter(&[p], SLACK), vec![p]);
        let chain = [RateTuple { d: 7.0, ..p }, p, RateTuple { d: 6.0, ..p }];
        assert_eq!(pareto_filter(&chain, SLACK), vec![p]);
        assert_eq!(pareto_filter(&[p, p], SLACK), vec![p]);
    }

    fn brute_force_front(points: &[RateTuple], eps: f64) -> Vec<usize> {
        (0..points.len())
            .filter(|&i| {
                !(0..points.len()).any(|j| {
                    j != i
                        && dominates(&points[j], &points[i], eps)
                        && (!dominates(&points[i], &points[j], eps) || j < i)
                })
            })
            .collect()
    }

    fn tuple() -> impl Strategy<Value = RateTuple> {
        prop::array::uniform5(0.0f64..4.0).prop_map(|c| RateTuple::new(c[0], c[1], c[2], c[3], c[4]))
    }

    proptest! {
        #[test]
        fn pareto_matches_quadratic_scan(points in prop::collection::vec(tuple(), 1..60)) {
            prop_assert_eq!(pareto_filter_indices(&points, SLACK), brute_force_front(&points, SLACK));
        }

        #[test]
        fn pareto_output_is_an_antichain(points in prop::collection::vec(tuple(), 1..60)) {
            let front = pareto_filter(&points, SLACK);
            for (i, a) in front.iter().enumerate() {
                for (j, b) in front.iter().enumerate() {
                    if i != j {
                        prop_assert!(!dominates(a, b, SLACK));
                    }
                }
            }
        }

        #[test]
        fn dominance_is_transitive(a in tuple(), b in tuple(), c in tuple()) {
            if dominates(&a, &b, 0.0) && dominates(&b, &c, 0.0) {
                prop_assert!(dominates(&a, &c, 0.0));
            }
        }

        #[test]
        fn enlarging_a_point_never_adds_violations(
            p in tuple(),
            bump in prop::array::uniform5(0.0f64..2.0),
            rhs in prop::collection::vec(-2.0f64..6.0, 9),
            masks in prop::collection::vec(prop::array::uniform5(any::<bool>()), 9),
        ) {
            let cs = ConstraintSet::new(
                rhs.iter().zip(&masks).enumerate().map(|(i, (r, m))| {
                    c(&format!("c{i}"), [m[0], m[1], m[2], m[3]], m[4], *r)
                }).collect(),
            );
            let q = RateTuple::new(p.r1 + bump[0], p.r2 + bump[1], p.l1 + bump[2], p.l2 + bump[3], p.d + bump[4]);
            let before = evaluate(&cs, &p, SLACK).unwrap();
            let after = evaluate(&cs, &q, SLACK).unwrap();
            for v in &after.violations {
                prop_assert!(before.violations.iter().any(|b| b.label == v.label));
            }
        }
    }
}
