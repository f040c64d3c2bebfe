//! Single-letter inner and outer bounds for discrete sources.
//!
//! All evaluators take a [`DiscreteCeoModel`] and an [`AuxiliarySystem`],
//! build the joint tensor, and read every right-hand side off a table of
//! named information terms ([`InformationQuantities`]). Constraint labels are
//! shared across bounds (`R1`, `R2`, `R1+R2`, `L1`, `L2`, `L1+L2`, `R1+L2`,
//! `R2+L1`, `D`) so sets can be compared label by label.

use std::collections::BTreeMap;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{build_joint, AuxiliarySystem, DiscreteCeoModel, JointDistribution, Var};
use crate::region::{
    dominates, evaluate, worst_excess, Constraint, ConstraintSet, DistortionTransform, FeasibilityReport, RateTuple,
    SLACK,
};

/// Tolerance for exact identities between information terms.
pub const EQ_TOL: f64 = 1e-10;

/// The nine constraint labels, in the order every bound emits them.
pub const LABELS: [&str; 9] = ["R1", "R2", "R1+R2", "L1", "L2", "L1+L2", "R1+L2", "R2+L1", "D"];

fn rate_mask(label: &str) -> [bool; 4] {
    let mut mask = [false; 4];
    for tok in label.split('+') {
        match tok {
            "R1" => mask[0] = true,
            "R2" => mask[1] = true,
            "L1" => mask[2] = true,
            "L2" => mask[3] = true,
            _ => {}
        }
    }
    mask
}

/// `label >= rhs` with no distortion term.
fn rate_constraint(label: &str, rhs: f64) -> Constraint {
    Constraint::new(
        label,
        rate_mask(label),
        label == "D",
        DistortionTransform::Identity,
        rhs,
    )
}

/// `label + D >= rhs`.
fn rate_plus_d(label: &str, rhs: f64) -> Constraint {
    Constraint::new(label, rate_mask(label), true, DistortionTransform::Identity, rhs)
}

/// Per-letter distortion used in the `D` constraint of the general bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscreteDistortion {
    /// Posterior reproduction; the constraint becomes `D >= H(X|U1,U2,Q)`.
    LogLoss,
    /// `matrix[x][xhat]`, minimized over deterministic maps `x̂(u1, u2, q)`.
    Matrix(Vec<Vec<f64>>),
}

impl DiscreteDistortion {
    fn floor(&self, joint: &JointDistribution) -> Result<f64> {
        match self {
            DiscreteDistortion::LogLoss => Ok(joint.logloss_distortion()),
            DiscreteDistortion::Matrix(m) => joint.expected_distortion(m),
        }
    }
}

/// An information term: `H(A | B)` or `I(A; B | C)`.
#[derive(Clone, Copy, Debug)]
pub enum Term {
    Entropy(&'static [Var], &'static [Var]),
    Mutual(&'static [Var], &'static [Var], &'static [Var]),
}

impl Term {
    pub fn eval(&self, joint: &JointDistribution) -> f64 {
        let r = match *self {
            Term::Entropy(a, given) => joint.conditional_entropy(a, given),
            Term::Mutual(a, b, c) => joint.cmi(a, b, c),
        };
        r.expect("term variable sets are disjoint")
    }
}

use Var::{Q, U1, U2, V1, V2, X, Y1, Y2, Z};

/// Every term appearing in the general and log-loss bounds.
pub const TERMS: &[(&str, Term)] = &[
    ("H(X)", Term::Entropy(&[X], &[])),
    ("H(X|U1,Q)", Term::Entropy(&[X], &[U1, Q])),
    ("H(X|U2,Q)", Term::Entropy(&[X], &[U2, Q])),
    ("H(X|U1,U2,Q)", Term::Entropy(&[X], &[U1, U2, Q])),
    ("I(Y1;U1|U2,Q)", Term::Mutual(&[Y1], &[U1], &[U2, Q])),
    ("I(Y2;U2|U1,Q)", Term::Mutual(&[Y2], &[U2], &[U1, Q])),
    ("I(Y1,Y2;U1,U2|Q)", Term::Mutual(&[Y1, Y2], &[U1, U2], &[Q])),
    ("I(X;U1|U2,Q)", Term::Mutual(&[X], &[U1], &[U2, Q])),
    ("I(X;U2|U1,Q)", Term::Mutual(&[X], &[U2], &[U1, Q])),
    ("I(X;U1,U2|Q)", Term::Mutual(&[X], &[U1, U2], &[Q])),
    ("I(Y1,X;U1,U2|Q)", Term::Mutual(&[Y1, X], &[U1, U2], &[Q])),
    ("I(X,Y2;U1,U2|Q)", Term::Mutual(&[X, Y2], &[U1, U2], &[Q])),
    ("I(V1;U2|Q)", Term::Mutual(&[V1], &[U2], &[Q])),
    ("I(V2;U1|Q)", Term::Mutual(&[V2], &[U1], &[Q])),
    ("I(Z;V1|Q)", Term::Mutual(&[Z], &[V1], &[Q])),
    ("I(Z;V2|Q)", Term::Mutual(&[Z], &[V2], &[Q])),
    ("I(V1;V2|Q)", Term::Mutual(&[V1], &[V2], &[Q])),
    ("I(X;V1|V2,Q)", Term::Mutual(&[X], &[V1], &[V2, Q])),
    ("I(X;V2|V1,Q)", Term::Mutual(&[X], &[V2], &[V1, Q])),
    ("I(X;V1,V2|Q)", Term::Mutual(&[X], &[V1, V2], &[Q])),
    ("I(X;V1|Q)", Term::Mutual(&[X], &[V1], &[Q])),
    ("I(X;V2|Q)", Term::Mutual(&[X], &[V2], &[Q])),
    ("xi1", Term::Mutual(&[V1], &[U2], &[Y1, Y2, Q])),
    ("xi2", Term::Mutual(&[V2], &[U1], &[Y2, Y1, Q])),
    ("I(Y1;U1|X,Q)", Term::Mutual(&[Y1], &[U1], &[X, Q])),
    ("I(Y2;U2|X,Q)", Term::Mutual(&[Y2], &[U2], &[X, Q])),
    ("I(Y1;U1|Q)", Term::Mutual(&[Y1], &[U1], &[Q])),
    ("I(Y2;U2|Q)", Term::Mutual(&[Y2], &[U2], &[Q])),
    ("I(X;U1|Q)", Term::Mutual(&[X], &[U1], &[Q])),
    ("I(X;U2|Q)", Term::Mutual(&[X], &[U2], &[Q])),
];

/// Named values of every term in [`TERMS`], in bits.
///
/// `xi_prime` is `I(V1;V2|Q)` under its own name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InformationQuantities {
    values: BTreeMap<String, f64>,
}

impl InformationQuantities {
    pub fn from_joint(joint: &JointDistribution) -> Self {
        let mut values: BTreeMap<String, f64> = TERMS
            .iter()
            .map(|(name, term)| (name.to_string(), term.eval(joint)))
            .collect();
        let xi_prime = values["I(V1;V2|Q)"];
        values.insert("xi_prime".into(), xi_prime);
        Self { values }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl Index<&str> for InformationQuantities {
    type Output = f64;

    fn index(&self, name: &str) -> &f64 {
        self.values
            .get(name)
            .unwrap_or_else(|| panic!("unknown information term {name}"))
    }
}

pub fn information_quantities(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<InformationQuantities> {
    Ok(InformationQuantities::from_joint(&build_joint(model, aux)?))
}

/// `xi_k = I(V_k; U_k' | Y_k, Y_k', Q)` for `k` in `{1, 2}`.
pub fn xi_k(joint: &JointDistribution, k: usize) -> Result<f64> {
    if k != 1 && k != 2 {
        return Err(Error::InvalidParameter(format!("agent index must be 1 or 2, got {k}")));
    }
    let other = 3 - k;
    joint.cmi(&[Var::v(k)], &[Var::u(other)], &[Var::y(k), Var::y(other), Var::Q])
}

/// `xi' = I(V1; V2 | Q)`.
pub fn xi_prime(joint: &JointDistribution) -> Result<f64> {
    joint.cmi(&[Var::V1], &[Var::V2], &[Var::Q])
}

fn general_inner(q: &InformationQuantities, floor: f64) -> ConstraintSet {
    ConstraintSet::new(vec![
        rate_constraint("R1", q["I(Y1;U1|U2,Q)"]),
        rate_constraint("R2", q["I(Y2;U2|U1,Q)"]),
        rate_constraint("R1+R2", q["I(Y1,Y2;U1,U2|Q)"]),
        rate_constraint("L1", q["I(X;U1|U2,Q)"] + q["I(V1;U2|Q)"] - q["I(Z;V1|Q)"]),
        rate_constraint("L2", q["I(X;U2|U1,Q)"] + q["I(V2;U1|Q)"] - q["I(Z;V2|Q)"]),
        rate_constraint(
            "L1+L2",
            q["I(X;U1,U2|Q)"] + q["I(V1;V2|Q)"] - q["I(Z;V1|Q)"] - q["I(Z;V2|Q)"],
        ),
        rate_constraint("R1+L2", q["I(Y1,X;U1,U2|Q)"] - q["I(Z;V2|Q)"]),
        rate_constraint("R2+L1", q["I(X,Y2;U1,U2|Q)"] - q["I(Z;V1|Q)"]),
        rate_constraint("D", floor),
    ])
}

fn general_outer(q: &InformationQuantities, floor: f64) -> ConstraintSet {
    let (xi1, xi2) = (q["xi1"], q["xi2"]);
    ConstraintSet::new(vec![
        rate_constraint("R1", q["I(Y1;U1|U2,Q)"]),
        rate_constraint("R2", q["I(Y2;U2|U1,Q)"]),
        rate_constraint("R1+R2", q["I(Y1,Y2;U1,U2|Q)"]),
        rate_constraint("L1", q["I(X;V1|V2,Q)"] + q["I(V1;U2|Q)"] - q["I(Z;V1|Q)"] - xi1),
        rate_constraint("L2", q["I(X;V2|V1,Q)"] + q["I(V2;U1|Q)"] - q["I(Z;V2|Q)"] - xi2),
        rate_constraint(
            "L1+L2",
            q["I(X;V1,V2|Q)"] + q["I(V1;V2|Q)"] - q["I(Z;V1|Q)"] - q["I(Z;V2|Q)"] - xi1.min(xi2),
        ),
        rate_constraint("R1+L2", q["I(Y1;U1|U2,Q)"] + q["I(X;V2|Q)"] - q["I(Z;V2|Q)"]),
        rate_constraint("R2+L1", q["I(Y2;U2|U1,Q)"] + q["I(X;V1|Q)"] - q["I(Z;V1|Q)"]),
        rate_constraint("D", floor),
    ])
}

/// Inner bound for a general distortion measure (time sharing, two-layer test channels).
pub fn inner_bound_constraints(
    model: &DiscreteCeoModel,
    aux: &AuxiliarySystem,
    distortion: &DiscreteDistortion,
) -> Result<ConstraintSet> {
    let joint = build_joint(model, aux)?;
    let q = InformationQuantities::from_joint(&joint);
    Ok(general_inner(&q, distortion.floor(&joint)?))
}

/// Outer bound for a general distortion measure, with the `xi_k` corrections.
pub fn outer_bound_constraints(
    model: &DiscreteCeoModel,
    aux: &AuxiliarySystem,
    distortion: &DiscreteDistortion,
) -> Result<ConstraintSet> {
    let joint = build_joint(model, aux)?;
    let q = InformationQuantities::from_joint(&joint);
    Ok(general_outer(&q, distortion.floor(&joint)?))
}

fn no_si_inner(q: &InformationQuantities) -> ConstraintSet {
    ConstraintSet::new(vec![
        rate_constraint("R1", q["I(Y1;U1|U2,Q)"]),
        rate_constraint("R2", q["I(Y2;U2|U1,Q)"]),
        rate_constraint("R1+R2", q["I(Y1,Y2;U1,U2|Q)"]),
        rate_constraint("L1", q["I(X;U1|U2,Q)"]),
        rate_constraint("L2", q["I(X;U2|U1,Q)"]),
        rate_constraint("L1+L2", q["I(X;U1,U2|Q)"]),
        rate_constraint("R1+L2", q["I(Y1,X;U1,U2|Q)"]),
        rate_constraint("R2+L1", q["I(X,Y2;U1,U2|Q)"]),
        rate_constraint("D", q["H(X|U1,U2,Q)"]),
    ])
}

fn no_si_outer(q: &InformationQuantities) -> ConstraintSet {
    let (a1, a2) = (q["I(Y1;U1|X,Q)"], q["I(Y2;U2|X,Q)"]);
    let hx = q["H(X)"];
    ConstraintSet::new(vec![
        rate_plus_d("R1", a1 + q["H(X|U2,Q)"]),
        rate_plus_d("R2", a2 + q["H(X|U1,Q)"]),
        rate_plus_d("R1+R2", a1 + a2 + hx),
        rate_plus_d("L1", q["H(X|U2,Q)"]),
        rate_plus_d("L2", q["H(X|U1,Q)"]),
        rate_plus_d("L1+L2", hx),
        rate_plus_d("R1+L2", a1 + hx),
        rate_plus_d("R2+L1", a2 + hx),
        rate_plus_d("D", q["H(X|U1,U2,Q)"]),
    ])
}

fn si_outer(q: &InformationQuantities) -> ConstraintSet {
    let (a1, a2) = (q["I(Y1;U1|X,Q)"], q["I(Y2;U2|X,Q)"]);
    let hx = q["H(X)"];
    let (zv1, zv2) = (q["I(Z;V1|Q)"], q["I(Z;V2|Q)"]);
    let xp = q["xi_prime"];
    ConstraintSet::new(vec![
        rate_plus_d("R1", a1 + q["H(X|U2,Q)"]),
        rate_plus_d("R2", a2 + q["H(X|U1,Q)"]),
        rate_plus_d("R1+R2", a1 + a2 + hx),
        rate_plus_d("L1", q["H(X|U2,Q)"] + q["I(V1;U2|Q)"] - zv1 - xp),
        rate_plus_d("L2", q["H(X|U1,Q)"] + q["I(V2;U1|Q)"] - zv2 - xp),
        rate_plus_d("L1+L2", hx + q["I(V1;V2|Q)"] - zv1 - zv2 - xp),
        rate_plus_d("R1+L2", a1 + hx - zv2),
        rate_plus_d("R2+L1", a2 + hx - zv1),
        rate_plus_d("D", q["H(X|U1,U2,Q)"]),
    ])
}

/// Checks that `Z` carries no information about `X` and that `V1`, `V2`
/// are functions of `Q`.
fn check_no_si(joint: &JointDistribution) -> Result<()> {
    let ixz = joint.mutual_information(&[Var::X], &[Var::Z])?;
    if ixz > SLACK {
        return Err(Error::Precondition(format!(
            "eavesdropper observation must be independent of X (I(X;Z) = {ixz:.3e})"
        )));
    }
    for v in [Var::V1, Var::V2] {
        let h = joint.conditional_entropy(&[v], &[Var::Q])?;
        if h > SLACK {
            return Err(Error::Precondition(format!(
                "{v} must be constant given Q for the model without side information (H({v}|Q) = {h:.3e})"
            )));
        }
    }
    Ok(())
}

fn no_si_quantities(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<InformationQuantities> {
    let joint = build_joint(model, aux)?;
    check_no_si(&joint)?;
    Ok(InformationQuantities::from_joint(&joint))
}

/// Log-loss inner bound without side information at the eavesdropper.
pub fn logloss_inner_no_si(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<ConstraintSet> {
    Ok(no_si_inner(&no_si_quantities(model, aux)?))
}

/// Log-loss outer bound without side information, every constraint in `rates + D >= rhs` form.
pub fn logloss_outer_no_si(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<ConstraintSet> {
    Ok(no_si_outer(&no_si_quantities(model, aux)?))
}

/// Log-loss inner bound with side information at the eavesdropper.
pub fn logloss_inner_si(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<ConstraintSet> {
    inner_bound_constraints(model, aux, &DiscreteDistortion::LogLoss)
}

/// Log-loss outer bound with side information; leakage constraints carry `-xi'`.
pub fn logloss_outer_si(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<ConstraintSet> {
    Ok(si_outer(&information_quantities(model, aux)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhsDifference {
    pub label: String,
    pub inner_rhs: f64,
    pub outer_rhs: f64,
    /// `inner_rhs - outer_rhs` as stored (the outer side still carries `+D`).
    pub difference: f64,
    /// Inner minus outer after fixing `D = H(X|U1,U2,Q)` in the outer constraint.
    pub difference_at_floor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiComparison {
    pub inner: ConstraintSet,
    pub outer: ConstraintSet,
    pub xi_prime: f64,
    pub distortion_floor: f64,
    pub differences: Vec<RhsDifference>,
}

/// Label-by-label comparison of the side-information inner and outer bounds.
pub fn si_comparison(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<SiComparison> {
    let joint = build_joint(model, aux)?;
    let q = InformationQuantities::from_joint(&joint);
    let floor = q["H(X|U1,U2,Q)"];
    let inner = general_inner(&q, floor);
    let outer = si_outer(&q);
    let differences = inner
        .iter()
        .zip(outer.iter())
        .map(|(i, o)| {
            let outer_at_floor = if o.distortion && o.label != "D" {
                o.rhs - floor
            } else {
                o.rhs
            };
            RhsDifference {
                label: i.label.clone(),
                inner_rhs: i.rhs,
                outer_rhs: o.rhs,
                difference: i.rhs - o.rhs,
                difference_at_floor: i.rhs - outer_at_floor,
            }
        })
        .collect();
    Ok(SiComparison {
        inner,
        outer,
        xi_prime: q["xi_prime"],
        distortion_floor: floor,
        differences,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremePoint {
    pub label: String,
    pub point: RateTuple,
    /// Outer-bound constraints this point is expected to meet with equality.
    pub expected_binding: Vec<String>,
    pub feasibility: FeasibilityReport,
    /// Feasible and every expected constraint tight, within 1e-9.
    pub verified: bool,
}

fn extreme_tuples(q: &InformationQuantities) -> Vec<(&'static str, RateTuple, &'static [&'static str])> {
    let a1 = q["I(Y1;U1|X,Q)"];
    let a2 = q["I(Y2;U2|X,Q)"];
    let hx = q["H(X)"];
    let (iy1, iy2) = (q["I(Y1;U1|Q)"], q["I(Y2;U2|Q)"]);
    let (ix1, ix2) = (q["I(X;U1|Q)"], q["I(X;U2|Q)"]);
    let (hx1, hx2, hx12) = (q["H(X|U1,Q)"], q["H(X|U2,Q)"], q["H(X|U1,U2,Q)"]);
    vec![
        ("P1", RateTuple::new(0.0, 0.0, 0.0, 0.0, a1 + a2 + hx), &["R1+R2"]),
        ("P2", RateTuple::new(0.0, a2, 0.0, 0.0, a1 + hx), &["R1+L2"]),
        ("P3", RateTuple::new(a1, 0.0, 0.0, 0.0, a2 + hx), &["R2+L1"]),
        ("P4", RateTuple::new(a1, a2, 0.0, 0.0, hx), &["L1+L2"]),
        ("P5", RateTuple::new(0.0, iy2, 0.0, ix2, a1 + hx2), &["R1"]),
        ("P6", RateTuple::new(iy1, 0.0, ix1, 0.0, a2 + hx1), &["R2"]),
        ("P7", RateTuple::new(a1, iy2, 0.0, ix2, hx2), &["L1"]),
        ("P8", RateTuple::new(iy1, a2, ix1, 0.0, hx1), &["L2"]),
        (
            "P9",
            RateTuple::new(iy1, q["I(Y2;U2|U1,Q)"], ix1, q["I(X;U2|U1,Q)"], hx12),
            &["D"],
        ),
        (
            "P10",
            RateTuple::new(q["I(Y1;U1|U2,Q)"], iy2, q["I(X;U1|U2,Q)"], ix2, hx12),
            &["D"],
        ),
    ]
}

/// The ten vertices of the no-side-information log-loss outer polytope for
/// fixed `P_Q`, `P_{U1|Y1,Q}`, `P_{U2|Y2,Q}`, each checked against the outer set.
pub fn extreme_points(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<Vec<ExtremePoint>> {
    let q = no_si_quantities(model, aux)?;
    let outer = no_si_outer(&q);
    extreme_tuples(&q)
        .into_iter()
        .map(|(label, point, binding)| {
            let feasibility = evaluate(&outer, &point, SLACK)?;
            let tight = binding
                .iter()
                .all(|b| feasibility.slack(b).is_some_and(|s| s.abs() <= SLACK));
            Ok(ExtremePoint {
                label: label.to_string(),
                point,
                expected_binding: binding.iter().map(|s| s.to_string()).collect(),
                verified: feasibility.feasible && tight,
                feasibility,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceEntry {
    pub label: String,
    pub point: RateTuple,
    pub dominator: RateTuple,
    /// How the dominating inner point is obtained.
    pub dominator_source: String,
    /// The dominator satisfies the inner bound of its own auxiliary system.
    pub dominator_feasible: bool,
    pub dominated: bool,
    /// Coordinate with the largest `dominator - point`, and that excess.
    pub worst_coordinate: String,
    pub worst_excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub entries: Vec<DominanceEntry>,
    pub verdict: bool,
}

impl DominanceReport {
    pub fn failures(&self) -> impl Iterator<Item = &DominanceEntry> {
        self.entries.iter().filter(|e| !(e.dominated && e.dominator_feasible))
    }
}

/// Checks that each outer extreme point is dominated by an inner-bound point
/// built from a degenerate version of the same auxiliary system.
pub fn dominance_report(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<DominanceReport> {
    let q = no_si_quantities(model, aux)?;
    let inner = no_si_inner(&q);
    let constant = AuxiliarySystem::constant(model);
    let u1_constant = aux.with_constant_agent(1);
    let u2_constant = aux.with_constant_agent(2);

    // Each candidate: (point, source, inner set it must satisfy).
    let candidate = |aux_used: &AuxiliarySystem| -> Result<(ConstraintSet, InformationQuantities)> {
        let qq = no_si_quantities(model, aux_used)?;
        Ok((no_si_inner(&qq), qq))
    };
    let (inner_const, q_const) = candidate(&constant)?;
    let (inner_u1c, q_u1c) = candidate(&u1_constant)?;
    let (inner_u2c, q_u2c) = candidate(&u2_constant)?;

    let all_constant = RateTuple::distortion_only(q_const["H(X)"]);
    // Sanity: with U2 alone active the inner corner is (0, I(Y2;U2|Q), 0, I(X;U2|Q), H(X|U2,Q)).
    let only_u2 = RateTuple::new(0.0, q_u1c["I(Y2;U2|Q)"], 0.0, q_u1c["I(X;U2|Q)"], q_u1c["H(X|U2,Q)"]);
    let only_u1 = RateTuple::new(q_u2c["I(Y1;U1|Q)"], 0.0, q_u2c["I(X;U1|Q)"], 0.0, q_u2c["H(X|U1,Q)"]);

    let mut entries = Vec::with_capacity(10);
    for (label, point, _) in extreme_tuples(&q) {
        let (dominator, source, set) = match label {
            "P1" | "P2" | "P3" | "P4" => (all_constant, "U1, U2 constant", &inner_const),
            "P5" | "P7" => (only_u2, "U1 constant", &inner_u1c),
            "P6" | "P8" => (only_u1, "U2 constant", &inner_u2c),
            _ => (point, "itself (inner region)", &inner),
        };
        let dominator_feasible = evaluate(set, &dominator, SLACK)?.feasible;
        let (worst, excess) = worst_excess(&dominator, &point);
        entries.push(DominanceEntry {
            label: label.to_string(),
            point,
            dominator,
            dominator_source: source.to_string(),
            dominator_feasible,
            dominated: dominates(&dominator, &point, SLACK),
            worst_coordinate: worst.to_string(),
            worst_excess: excess,
        });
    }
    let verdict = entries.iter().all(|e| e.dominated && e.dominator_feasible);
    Ok(DominanceReport { entries, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    /// `I(Y1; Ũ1 | X, Q)`
    pub gap: f64,
    /// Extreme distortion `I(Y1;Ũ1|X,Q) + H(X|Ũ2,Q)` where the minimum `R1` is zero.
    pub distortion: f64,
    /// Outer-bound cap on the first equivocation rate at that distortion.
    pub outer_cap: f64,
    /// Largest first equivocation rate in the inner bound, `H(X)`.
    pub inner_max: f64,
    /// `outer_cap - inner_max` equals `gap` within 1e-10.
    pub consistent: bool,
    /// `gap > 1e-9`
    pub strict: bool,
}

/// Shows the equivocation-based inner and outer bounds under log-loss differ
/// by `I(Y1; Ũ1 | X, Q)` at one extreme point. Only the `U` layer of `aux` is used.
pub fn equivocation_counterexample(
    model: &DiscreteCeoModel,
    aux_tilde: &AuxiliarySystem,
) -> Result<CounterexampleReport> {
    let joint = build_joint(model, &aux_tilde.with_constant_v())?;
    let hx = joint.entropy(&[Var::X])?;
    let gap = joint.cmi(&[Var::Y1], &[Var::U1], &[Var::X, Var::Q])?;
    let hx_u2 = joint.conditional_entropy(&[Var::X], &[Var::U2, Var::Q])?;
    let distortion = gap + hx_u2;
    let outer_cap = hx - hx_u2 + distortion;
    let inner_max = hx;
    Ok(CounterexampleReport {
        gap,
        distortion,
        outer_cap,
        inner_max,
        consistent: ((outer_cap - inner_max) - gap).abs() <= EQ_TOL,
        strict: gap > SLACK,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    /// `I(Y1;U1|X,Q) + I(Y2;U2|X,Q) + H(X)`
    pub threshold: f64,
    pub distortion: f64,
    pub outer_feasible: bool,
    /// `(0, 0, 0, 0, H(X))`
    pub inner_point: RateTuple,
    pub inner_feasible: bool,
    pub dominated: bool,
}

/// At large distortion the side-information bounds meet: `(0,0,0,0,D)` with
/// `D` above the threshold is outer-feasible and dominated by the all-constant
/// inner point. `distortion = None` tests exactly at the threshold.
pub fn large_distortion_coincidence(
    model: &DiscreteCeoModel,
    aux: &AuxiliarySystem,
    distortion: Option<f64>,
) -> Result<CoincidenceReport> {
    let q = information_quantities(model, aux)?;
    let threshold = q["I(Y1;U1|X,Q)"] + q["I(Y2;U2|X,Q)"] + q["H(X)"];
    let d = distortion.unwrap_or(threshold);
    if d < threshold {
        return Err(Error::InvalidParameter(format!(
            "distortion {d} is below the coincidence threshold {threshold}"
        )));
    }
    let point = RateTuple::distortion_only(d);
    let outer_feasible = evaluate(&si_outer(&q), &point, SLACK)?.feasible;
    let inner_point = RateTuple::distortion_only(q["H(X)"]);
    let inner_const = logloss_inner_si(model, &AuxiliarySystem::constant(model))?;
    let inner_feasible = evaluate(&inner_const, &inner_point, SLACK)?.feasible;
    Ok(CoincidenceReport {
        threshold,
        distortion: d,
        outer_feasible,
        inner_point,
        inner_feasible,
        dominated: dominates(&inner_point, &point, SLACK),
    })
}
