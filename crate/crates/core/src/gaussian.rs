//! Closed-form rate-distortion-leakage regions for the scalar Gaussian model
//! `Y_k = X + N_k` without side information at the eavesdropper.
//!
//! For auxiliary rates `(r1, r2)` and every pair `K ⊆ S ⊆ {1, 2}` the region
//! contains the half-space
//!
//! ```text
//! sum_{k in K} R_k + sum_{k in S\K} L_k + D >= sum_{k in K} r_k + ½ log2 2πe P^{-1}      (log-loss)
//! sum_{k in K} R_k + sum_{k in S\K} L_k + ½ log2 D >= sum_{k in K} r_k + ½ log2 P^{-1}   (quadratic)
//! ```
//!
//! with `P = 1/σ²_X + sum_{j in S^c} (1 - 2^{-2 r_j}) / σ²_{N_j}`. A tuple is
//! in the region when some `(r1, r2) >= 0` satisfies all nine at once.

use std::f64::consts::{E, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::region::{Constraint, ConstraintSet, DistortionTransform, RateTuple, SLACK};
use crate::search::{minimize_max, SearchConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianCeoParams {
    pub sigma2_x: f64,
    pub sigma2_n1: f64,
    pub sigma2_n2: f64,
}

impl GaussianCeoParams {
    pub fn new(sigma2_x: f64, sigma2_n1: f64, sigma2_n2: f64) -> Result<Self> {
        for (name, v) in [
            ("sigma2_x", sigma2_x),
            ("sigma2_n1", sigma2_n1),
            ("sigma2_n2", sigma2_n2),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            sigma2_x,
            sigma2_n1,
            sigma2_n2,
        })
    }

    pub fn sigma2_n(&self, k: usize) -> f64 {
        if k == 1 {
            self.sigma2_n1
        } else {
            self.sigma2_n2
        }
    }

    /// `h(X) = ½ log2(2πe σ²_X)`
    pub fn source_entropy(&self) -> f64 {
        0.5 * (2.0 * PI * E * self.sigma2_x).log2()
    }

    /// `h(X | Y_k)`
    pub fn entropy_given_observation(&self, k: usize) -> f64 {
        let n = self.sigma2_n(k);
        0.5 * (2.0 * PI * E * self.sigma2_x * n / (self.sigma2_x + n)).log2()
    }
}

/// Auxiliary rates `(r1, r2)`; `+inf` stands for a noiseless test channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxRates {
    pub r1: f64,
    pub r2: f64,
}

impl AuxRates {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    pub fn get(&self, k: usize) -> f64 {
        if k == 1 {
            self.r1
        } else {
            self.r2
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    LogLoss,
    Quadratic,
}

impl Metric {
    pub fn transform(self) -> DistortionTransform {
        match self {
            Metric::LogLoss => DistortionTransform::Identity,
            Metric::Quadratic => DistortionTransform::HalfLog,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::LogLoss => "logloss",
            Metric::Quadratic => "quadratic",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "logloss" | "log-loss" | "log_loss" => Ok(Metric::LogLoss),
            "quadratic" | "mse" => Ok(Metric::Quadratic),
            other => Err(Error::InvalidParameter(format!("unknown metric `{other}`"))),
        }
    }
}

/// `K ⊆ S ⊆ {1, 2}`, stored as membership flags for agents 1 and 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetPair {
    pub s: [bool; 2],
    pub k: [bool; 2],
}

fn fmt_set(set: [bool; 2]) -> String {
    let members: Vec<&str> = ["1", "2"]
        .iter()
        .zip(set)
        .filter(|(_, on)| *on)
        .map(|(n, _)| *n)
        .collect();
    format!("{{{}}}", members.join(","))
}

impl SubsetPair {
    pub fn new(s: [bool; 2], k: [bool; 2]) -> Result<Self> {
        if (k[0] && !s[0]) || (k[1] && !s[1]) {
            return Err(Error::InvalidParameter(format!(
                "K={} is not a subset of S={}",
                fmt_set(k),
                fmt_set(s)
            )));
        }
        Ok(Self { s, k })
    }

    /// All nine pairs: `S = {}` (1), `{1}` (2), `{2}` (2), `{1,2}` (4).
    pub fn all() -> [SubsetPair; 9] {
        let p = |s, k| SubsetPair { s, k };
        const F: bool = false;
        const T: bool = true;
        [
            p([F, F], [F, F]),
            p([T, F], [F, F]),
            p([T, F], [T, F]),
            p([F, T], [F, F]),
            p([F, T], [F, T]),
            p([T, T], [F, F]),
            p([T, T], [T, F]),
            p([T, T], [F, T]),
            p([T, T], [T, T]),
        ]
    }

    /// `S^c`
    pub fn complement(&self) -> [bool; 2] {
        [!self.s[0], !self.s[1]]
    }

    /// `S \ K`: agents that contribute a leakage rate.
    pub fn leak(&self) -> [bool; 2] {
        [self.s[0] && !self.k[0], self.s[1] && !self.k[1]]
    }

    pub fn label(&self) -> String {
        format!("S={},K={}", fmt_set(self.s), fmt_set(self.k))
    }

    /// Coefficient mask over `(R1, R2, L1, L2)`.
    pub fn rate_mask(&self) -> [bool; 4] {
        let leak = self.leak();
        [self.k[0], self.k[1], leak[0], leak[1]]
    }
}

/// `1/σ²_X + sum_{j in active} (1 - 2^{-2 r_j}) / σ²_{N_j}`
fn precision(params: &GaussianCeoParams, active: [bool; 2], rates: AuxRates) -> f64 {
    let mut p = 1.0 / params.sigma2_x;
    for k in 1..=2 {
        if active[k - 1] {
            // -expm1 keeps small r accurate; r = +inf gives exactly 1
            p += -(-2.0 * rates.get(k) * LN_2).exp_m1() / params.sigma2_n(k);
        }
    }
    p
}

/// `h(X | U_A, Q) = ½ log2 2πe (1/σ²_X + sum_{k in A} (1 - 2^{-2 r_k}) / σ²_{N_k})^{-1}`,
/// for the agents flagged in `active`.
pub fn gaussian_cond_entropy(params: &GaussianCeoParams, active: [bool; 2], rates: AuxRates) -> f64 {
    0.5 * (2.0 * PI * E / precision(params, active, rates)).log2()
}

/// Coefficient mask and right-hand side of one constraint, without allocating.
fn constraint_parts(params: &GaussianCeoParams, rates: AuxRates, pair: SubsetPair, metric: Metric) -> ([bool; 4], f64) {
    let prec = precision(params, pair.complement(), rates);
    let spectral = match metric {
        Metric::LogLoss => 0.5 * (2.0 * PI * E / prec).log2(),
        Metric::Quadratic => -0.5 * prec.log2(),
    };
    let mut rhs = spectral;
    for k in 1..=2 {
        if pair.k[k - 1] {
            rhs += rates.get(k);
        }
    }
    (pair.rate_mask(), rhs)
}

/// The constraint for one `(S, K)` pair, in canonical form.
pub fn gaussian_rhs(params: &GaussianCeoParams, rates: AuxRates, pair: SubsetPair, metric: Metric) -> Constraint {
    let (mask, rhs) = constraint_parts(params, rates, pair, metric);
    Constraint::new(pair.label(), mask, true, metric.transform(), rhs)
}

/// All nine constraints at fixed auxiliary rates.
pub fn all_constraints(params: &GaussianCeoParams, rates: AuxRates, metric: Metric) -> ConstraintSet {
    ConstraintSet::new(
        SubsetPair::all()
            .into_iter()
            .map(|pair| gaussian_rhs(params, rates, pair, metric))
            .collect(),
    )
}

/// The four constraints with `K = S` (no leakage rates).
pub fn rate_distortion_constraints(params: &GaussianCeoParams, rates: AuxRates, metric: Metric) -> ConstraintSet {
    all_constraints(params, rates, metric).without_rates([false, false, true, true])
}

fn rate_sum(mask: [bool; 4], rates: [f64; 4]) -> f64 {
    mask.iter().zip(rates).filter(|(on, _)| **on).map(|(_, r)| r).sum()
}

/// Smallest `D` allowed by all nine constraints at `(r1, r2)`.
fn distortion_floor_at(params: &GaussianCeoParams, rates: [f64; 4], aux: AuxRates, metric: Metric) -> f64 {
    let transform = metric.transform();
    SubsetPair::all()
        .into_iter()
        .map(|pair| {
            let (mask, rhs) = constraint_parts(params, aux, pair, metric);
            let sum = rate_sum(mask, rates);
            if sum == f64::INFINITY {
                f64::NEG_INFINITY
            } else {
                transform.invert(rhs - sum)
            }
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// One point of a leakage/distortion curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "minD")]
    pub min_d: f64,
    #[serde(rename = "r1_witness")]
    pub r1: f64,
    #[serde(rename = "r2_witness")]
    pub r2: f64,
}

fn check_rates(rates: &[(&'static str, f64)]) -> Result<()> {
    for &(field, v) in rates {
        if v.is_nan() || v < 0.0 {
            return Err(Error::InvalidTuple {
                field,
                reason: format!("must be non-negative, got {v}"),
            });
        }
    }
    Ok(())
}

fn min_distortion_seeded(
    params: &GaussianCeoParams,
    rates: [f64; 4],
    metric: Metric,
    r_max: f64,
    cfg: &SearchConfig,
    seeds: &[(f64, f64)],
) -> CurveRow {
    let m = minimize_max(
        |r1, r2| distortion_floor_at(params, rates, AuxRates::new(r1, r2), metric),
        r_max,
        cfg,
        seeds,
    );
    CurveRow {
        l1: rates[2],
        min_d: m.value.max(0.0),
        r1: m.r1,
        r2: m.r2,
    }
}

/// Minimum distortion at fixed `(R1, R2, L1)`. `l2 = None` drops every
/// constraint involving `L2`; `l1 = inf` does the same for `L1`.
pub fn min_distortion(
    params: &GaussianCeoParams,
    r1: f64,
    r2: f64,
    l1: f64,
    l2: Option<f64>,
    metric: Metric,
    cfg: &SearchConfig,
) -> Result<CurveRow> {
    cfg.validate()?;
    let l2 = l2.unwrap_or(f64::INFINITY);
    check_rates(&[("R1", r1), ("R2", r2), ("L1", l1), ("L2", l2)])?;
    let rates = [r1, r2, l1, l2];
    let r_max = cfg.r_max_for(&rates);
    Ok(min_distortion_seeded(params, rates, metric, r_max, cfg, &[]))
}

/// Minimum distortion from the `K = S` subfamily only, i.e. with every
/// leakage constraint removed from the set before optimizing.
pub fn min_distortion_without_leakage(
    params: &GaussianCeoParams,
    r1: f64,
    r2: f64,
    metric: Metric,
    cfg: &SearchConfig,
) -> Result<CurveRow> {
    cfg.validate()?;
    check_rates(&[("R1", r1), ("R2", r2)])?;
    let rates = [r1, r2, 0.0, 0.0];
    let r_max = cfg.r_max_for(&[r1, r2]);
    let m = minimize_max(
        |a, b| rate_distortion_constraints(params, AuxRates::new(a, b), metric).min_distortion(rates),
        r_max,
        cfg,
        &[],
    );
    Ok(CurveRow {
        l1: f64::INFINITY,
        min_d: m.value.max(0.0),
        r1: m.r1,
        r2: m.r2,
    })
}

/// Minimum distortion at each `L1` of `l1_grid`, with a common search box.
///
/// Each point also tries the previous point's witness, so the curve is
/// nonincreasing whenever the grid is increasing.
pub fn leakage_curve(
    params: &GaussianCeoParams,
    r1: f64,
    r2: f64,
    l1_grid: &[f64],
    l2: Option<f64>,
    metric: Metric,
    cfg: &SearchConfig,
) -> Result<Vec<CurveRow>> {
    cfg.validate()?;
    let l2 = l2.unwrap_or(f64::INFINITY);
    check_rates(&[("R1", r1), ("R2", r2), ("L2", l2)])?;
    for &l1 in l1_grid {
        check_rates(&[("L1", l1)])?;
    }
    let l1_span = l1_grid.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let r_max = cfg.r_max_for(&[r1, r2, l1_span, l2]);
    let mut rows = Vec::with_capacity(l1_grid.len());
    let mut seeds: Vec<(f64, f64)> = Vec::new();
    for &l1 in l1_grid {
        let row = min_distortion_seeded(params, [r1, r2, l1, l2], metric, r_max, cfg, &seeds);
        seeds = vec![(row.r1, row.r2)];
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaturationReport {
    /// Smallest grid `L1` from which every later point matches the
    /// unconstrained distortion within `tol`; `None` if no such point.
    pub l1_star: Option<f64>,
    /// Minimum distortion with `L1 = inf`.
    pub unconstrained: CurveRow,
    pub curve: Vec<CurveRow>,
    pub tol: f64,
}

/// Locates where the leakage/distortion curve stops improving.
#[allow(clippy::too_many_arguments)]
pub fn saturation_threshold(
    params: &GaussianCeoParams,
    r1: f64,
    r2: f64,
    l2: Option<f64>,
    metric: Metric,
    tol: f64,
    l1_grid: &[f64],
    cfg: &SearchConfig,
) -> Result<SaturationReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let unconstrained = min_distortion(params, r1, r2, f64::INFINITY, l2, metric, cfg)?;
    let curve = leakage_curve(params, r1, r2, l1_grid, l2, metric, cfg)?;
    let mut l1_star = None;
    for row in curve.iter().rev() {
        if (row.min_d - unconstrained.min_d).abs() < tol {
            l1_star = Some(row.l1);
        } else {
            break;
        }
    }
    Ok(SaturationReport {
        l1_star,
        unconstrained,
        curve,
        tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub achievable: bool,
    /// Auxiliary rates at the smallest worst-case violation found.
    pub witness: Option<AuxRates>,
    /// `max_i (rhs_i - lhs_i)` at the witness; achievable iff `<= 1e-9`.
    pub max_violation: f64,
    pub note: Option<String>,
}

/// Decides whether `tuple` lies in the region, i.e. whether some `(r1, r2)`
/// in the search box satisfies all nine constraints with slack `>= -1e-9`.
pub fn membership(
    params: &GaussianCeoParams,
    tuple: &RateTuple,
    metric: Metric,
    cfg: &SearchConfig,
) -> Result<MembershipVerdict> {
    cfg.validate()?;
    tuple.validate()?;
    if metric == Metric::Quadratic && tuple.d == 0.0 {
        return Ok(MembershipVerdict {
            achievable: false,
            witness: None,
            max_violation: f64::INFINITY,
            note: Some("quadratic distortion D = 0 is never achievable: ½log2(D) is unbounded below".into()),
        });
    }
    let rates = tuple.rates();
    let g = metric.transform().apply(tuple.d);
    let objective = |a: f64, b: f64| {
        SubsetPair::all()
            .into_iter()
            .map(|pair| {
                let (mask, rhs) = constraint_parts(params, AuxRates::new(a, b), pair, metric);
                let lhs = rate_sum(mask, rates);
                if lhs == f64::INFINITY {
                    f64::NEG_INFINITY
                } else {
                    rhs - lhs - g
                }
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let r_max = cfg.r_max_for(&rates);
    let m = minimize_max(objective, r_max, cfg, &[]);
    let achievable = m.value <= SLACK;
    Ok(MembershipVerdict {
        achievable,
        witness: Some(AuxRates::new(m.r1, m.r2)),
        max_violation: m.value,
        note: None,
    })
}

/// `r = ½ log2((σ²_N + β) / β)`; `β = inf` maps to 0.
pub fn beta_to_r(sigma2_n: f64, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    if beta == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(0.5 * (sigma2_n / beta).ln_1p() / LN_2)
}

/// Inverse of [`beta_to_r`]: `β = σ²_N / (2^{2r} - 1)`; `r = 0` maps to `inf`.
pub fn r_to_beta(sigma2_n: f64, r: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::InvalidParameter(format!("r must be non-negative, got {r}")));
    }
    if r == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(sigma2_n / (2.0 * r * LN_2).exp_m1())
}

/// The four reference configurations: `(σ²_X, σ²_N1, σ²_N2, R1, R2)`.
pub const REFERENCE_CONFIGS: [(f64, f64, f64, f64, f64); 4] = [
    (2.0, 1.0, 1.0, 0.5, 0.5),
    (2.0, 1.0, 1.0, 1.0, 0.5),
    (5.0, 1.0, 1.0, 0.5, 0.5),
    (5.0, 1.0, 1.0, 1.0, 0.5),
];

/// Inclusive grid `start, start + step, ..., stop`.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidParameter(format!("bad grid {start}:{stop}:{step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row1() -> GaussianCeoParams {
        GaussianCeoParams::new(2.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn nine_pairs_with_distinct_labels() {
        let pairs = SubsetPair::all();
        let mut labels: Vec<String> = pairs.iter().map(SubsetPair::label).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 9);
        assert!(SubsetPair::new([true, false], [false, true]).is_err());
        assert_eq!(
            all_constraints(&row1(), AuxRates::new(0.3, 0.1), Metric::Quadratic).len(),
            9
        );
    }

    #[test]
    fn empty_s_is_the_distortion_floor() {
        let p = row1();
        let rates = AuxRates::new(0.3, 0.7);
        let c = gaussian_rhs(&p, rates, SubsetPair::all()[0], Metric::LogLoss);
        let prec = 0.5 + (1.0 - 2f64.powf(-0.6)) + (1.0 - 2f64.powf(-1.4));
        assert!((c.rhs - 0.5 * (2.0 * PI * E / prec).log2()).abs() < 1e-14);
        assert_eq!(c.rates, [false; 4]);
        assert!(c.distortion);
    }

    #[test]
    fn full_k_at_zero_rates_is_source_entropy() {
        let p = row1();
        let c = gaussian_rhs(&p, AuxRates::new(0.0, 0.0), SubsetPair::all()[8], Metric::LogLoss);
        assert_eq!(c.rates, [true, true, false, false]);
        assert!((c.rhs - p.source_entropy()).abs() < 1e-14);
    }

    #[test]
    fn quadratic_l1_constraint_matches_closed_form() {
        let p = row1();
        let c = gaussian_rhs(&p, AuxRates::new(0.2, 0.5), SubsetPair::all()[1], Metric::Quadratic);
        assert_eq!(c.rates, [false, false, true, false]);
        for l1 in [0.0, 0.4, 1.3] {
            let d = c.distortion_lower_bound([0.0, 0.0, l1, 0.0]);
            assert!((d - 2f64.powf(-2.0 * l1)).abs() < 1e-14);
        }
    }

    #[test]
    fn infinite_rates_give_the_full_observation_floor() {
        let p = row1();
        let c = gaussian_rhs(
            &p,
            AuxRates::new(f64::INFINITY, f64::INFINITY),
            SubsetPair::all()[0],
            Metric::LogLoss,
        );
        assert!((c.rhs - 0.5 * (2.0 * PI * E / 2.5).log2()).abs() < 1e-14);
    }

    #[test]
    fn cond_entropy_cases() {
        let p = row1();
        let empty = gaussian_cond_entropy(&p, [false, false], AuxRates::new(1.0, 1.0));
        assert!((empty - p.source_entropy()).abs() < 1e-14);
        let inf = gaussian_cond_entropy(&p, [true, false], AuxRates::new(f64::INFINITY, 0.0));
        assert!((inf - p.entropy_given_observation(1)).abs() < 1e-14);
        let half = gaussian_cond_entropy(&p, [false, true], AuxRates::new(0.0, 0.5));
        assert!((half - 0.5 * (2.0 * PI * E).log2()).abs() < 1e-14);
    }

    #[test]
    fn beta_r_examples() {
        assert!((beta_to_r(3.0, 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(beta_to_r(1.0, f64::INFINITY).unwrap(), 0.0);
        assert!(beta_to_r(1.0, 1e300).unwrap() < 1e-299);
        assert!((r_to_beta(1.0, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r_to_beta(1.0, 0.0).unwrap(), f64::INFINITY);
        assert!(beta_to_r(1.0, 0.0).is_err());
        assert!(r_to_beta(1.0, -0.1).is_err());
    }

    #[test]
    fn origin_with_source_entropy_is_achievable_at_zero_rates() {
        let p = row1();
        let t = RateTuple::distortion_only(p.source_entropy());
        let v = membership(&p, &t, Metric::LogLoss, &SearchConfig::default()).unwrap();
        assert!(v.achievable);
        let w = v.witness.unwrap();
        assert!(w.r1 < 1e-6 && w.r2 < 1e-6, "{w:?}");
    }

    #[test]
    fn below_the_floor_is_never_achievable() {
        let p = row1();
        let floor = gaussian_cond_entropy(&p, [true, true], AuxRates::new(f64::INFINITY, f64::INFINITY));
        let big = 50.0;
        let t = RateTuple::new(big, big, big, big, floor - 1e-3);
        assert!(
            !membership(&p, &t, Metric::LogLoss, &SearchConfig::default())
                .unwrap()
                .achievable
        );
        let q = RateTuple::new(big, big, big, big, 0.0);
        let v = membership(&p, &q, Metric::Quadratic, &SearchConfig::default()).unwrap();
        assert!(!v.achievable && v.note.is_some());
        assert!(membership(
            &p,
            &RateTuple::new(-1.0, 0.0, 0.0, 0.0, 1.0),
            Metric::LogLoss,
            &SearchConfig::default()
        )
        .is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = linear_grid(0.0, 3.0, 0.05).unwrap();
        assert_eq!(g.len(), 61);
        assert!((g[60] - 3.0).abs() < 1e-12);
        assert!(linear_grid(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn metric_parsing() {
        assert_eq!("logloss".parse::<Metric>().unwrap(), Metric::LogLoss);
        assert_eq!("Quadratic".parse::<Metric>().unwrap(), Metric::Quadratic);
        assert!("l1".parse::<Metric>().is_err());
    }
}
