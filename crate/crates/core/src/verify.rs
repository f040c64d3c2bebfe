//! Seeded verification suites.
//!
//! Each check draws its instances from its own ChaCha stream derived from
//! the run seed, so selecting a subset of checks does not change the
//! instances any single check sees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::discrete::{
    dominance_report, equivocation_counterexample, extreme_points, large_distortion_coincidence, logloss_inner_no_si,
    logloss_outer_no_si, xi_k, EQ_TOL,
};
use crate::document::Instance;
use crate::error::{Error, Result};
use crate::gaussian::{leakage_curve, linear_grid, saturation_threshold, GaussianCeoParams, Metric, REFERENCE_CONFIGS};
use crate::info::{build_joint, identity_kernel, AuxiliarySystem, DiscreteCeoModel};
use crate::region::{evaluate, SLACK};
use crate::sample::{self, Alphabet, SeededRng};
use crate::search::SearchConfig;

/// Diagnostics kept per check; further failures are only counted.
const MAX_DETAILS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    XiZero,
    Dominance,
    InnerInOuter,
    Saturation,
    Counterexample,
    Coincidence,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::XiZero,
        Check::Dominance,
        Check::InnerInOuter,
        Check::Saturation,
        Check::Counterexample,
        Check::Coincidence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::XiZero => "xi-zero",
            Check::Dominance => "dominance",
            Check::InnerInOuter => "inner-in-outer",
            Check::Saturation => "saturation",
            Check::Counterexample => "counterexample",
            Check::Coincidence => "coincidence",
        }
    }

    fn stream(self) -> u64 {
        Check::ALL.iter().position(|c| *c == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s.trim()).ok_or_else(|| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            Error::InvalidParameter(format!("unknown check '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

/// Overrides applied to every reference configuration used by the saturation suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GaussianOverrides {
    pub sigma2_x: Option<f64>,
    pub sigma2_n1: Option<f64>,
    pub sigma2_n2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random instances per discrete check.
    pub instances: usize,
    pub checks: Vec<Check>,
    pub gaussian: GaussianOverrides,
    pub search: SearchConfig,
    /// Saturation tolerance on `|D*(L1) - D*(inf)|`.
    pub saturation_tol: f64,
    /// Extra instance checked alongside the random ones.
    pub instance: Option<Instance>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            instances: 100,
            checks: Check::ALL.to_vec(),
            gaussian: GaussianOverrides::default(),
            search: SearchConfig::default(),
            saturation_tol: 1e-6,
            instance: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub details: Vec<String>,
}

impl CheckOutcome {
    fn new(check: Check) -> Self {
        Self {
            check,
            passed: true,
            cases: 0,
            failures: 0,
            details: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.details.len() < MAX_DETAILS {
                self.details.push(detail());
            }
        }
    }

    fn note(&mut self, line: String) {
        if self.details.len() < MAX_DETAILS {
            self.details.push(line);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub passed: bool,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifySummary {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            out.push_str(&format!(
                "{:<16} {}  cases={} failures={}\n",
                o.check.name(),
                if o.passed { "PASS" } else { "FAIL" },
                o.cases,
                o.failures
            ));
            for d in &o.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        out.push_str(&format!("overall: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        out
    }
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifySummary> {
    if cfg.instances == 0 && cfg.instance.is_none() {
        return Err(Error::InvalidParameter("instances must be at least 1".into()));
    }
    if !(cfg.saturation_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "saturation tolerance must be positive, got {}",
            cfg.saturation_tol
        )));
    }
    cfg.search.validate()?;
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let mut outcomes = Vec::with_capacity(checks.len());
    for check in checks {
        let mut rng = sample::rng(cfg.seed ^ check.stream().wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let outcome = match check {
            Check::XiZero => xi_zero(cfg, &mut rng)?,
            Check::Dominance => dominance(cfg, &mut rng)?,
            Check::InnerInOuter => inner_in_outer(cfg, &mut rng)?,
            Check::Saturation => saturation(cfg)?,
            Check::Counterexample => counterexample()?,
            Check::Coincidence => coincidence(cfg, &mut rng)?,
        };
        outcomes.push(outcome);
    }
    Ok(VerifySummary {
        seed: cfg.seed,
        passed: outcomes.iter().all(|o| o.passed),
        outcomes,
    })
}

fn small_sizes(rng: &mut SeededRng) -> (usize, [usize; 2], [usize; 2]) {
    use rand::Rng;
    let nq = rng.random_range(1..=2);
    let nu = [rng.random_range(1..=3), rng.random_range(1..=3)];
    let nv = [rng.random_range(1..=3), rng.random_range(1..=3)];
    (nq, nu, nv)
}

/// Random binary instances with full two-layer auxiliaries.
fn random_instances(
    cfg: &VerifyConfig,
    rng: &mut SeededRng,
    with_si: bool,
) -> Vec<(String, DiscreteCeoModel, AuxiliarySystem)> {
    let mut out = Vec::with_capacity(cfg.instances + 1);
    for i in 0..cfg.instances {
        let model = if with_si {
            sample::random_model(rng, Alphabet::BINARY)
        } else {
            sample::random_model_without_si(rng, Alphabet::BINARY)
        };
        let (nq, nu, nv) = small_sizes(rng);
        let aux = sample::random_aux(rng, &model, nq, nu, nv);
        out.push((format!("instance {i}"), model, aux));
    }
    if let Some(inst) = &cfg.instance {
        let model = if with_si {
            inst.model.clone()
        } else {
            inst.model.drop_side_information()
        };
        out.push(("input".into(), model, inst.aux.clone()));
    }
    out
}

fn xi_zero(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::new(Check::XiZero);
    for (name, model, aux) in random_instances(cfg, rng, true) {
        let joint = build_joint(&model, &aux)?;
        let (x1, x2) = (xi_k(&joint, 1)?, xi_k(&joint, 2)?);
        o.record(x1 < EQ_TOL && x2 < EQ_TOL, || format!("{name}: xi1={x1:e} xi2={x2:e}"));
    }
    Ok(o)
}

fn dominance(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::new(Check::Dominance);
    for (name, model, aux) in random_instances(cfg, rng, false) {
        let aux = aux.with_constant_v();
        for p in extreme_points(&model, &aux)? {
            o.record(p.feasibility.feasible, || {
                format!(
                    "{name}: {} infeasible (max violation {:e})",
                    p.label, p.feasibility.max_violation
                )
            });
        }
        let report = dominance_report(&model, &aux)?;
        for e in &report.entries {
            o.record(e.dominated && e.dominator_feasible, || {
                format!(
                    "{name}: {} not dominated by {} ({} exceeds by {:e})",
                    e.label, e.dominator_source, e.worst_coordinate, e.worst_excess
                )
            });
        }
    }
    Ok(o)
}

fn inner_in_outer(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckOutcome> {
    const PER_INSTANCE: usize = 20;
    let mut o = CheckOutcome::new(Check::InnerInOuter);
    for (name, model, aux) in random_instances(cfg, rng, false) {
        let aux = aux.with_constant_v();
        let inner = logloss_inner_no_si(&model, &aux)?;
        let outer = logloss_outer_no_si(&model, &aux)?;
        let mut points = sample::boundary_points(rng, &inner, PER_INSTANCE, 2.0);
        points.extend(
            extreme_points(&model, &aux)?
                .into_iter()
                .filter(|p| p.label == "P9" || p.label == "P10")
                .map(|p| p.point),
        );
        for p in points {
            let inner_ok = evaluate(&inner, &p, SLACK)?.feasible;
            let rep = evaluate(&outer, &p, SLACK)?;
            o.record(inner_ok && rep.feasible, || {
                format!(
                    "{name}: {p} inner-feasible={inner_ok} outer max violation {:e}",
                    rep.max_violation
                )
            });
        }
    }
    Ok(o)
}

/// Reference configurations with the overrides applied, duplicates removed.
pub fn saturation_rows(ov: &GaussianOverrides) -> Vec<(f64, f64, f64, f64, f64)> {
    let mut rows: Vec<(f64, f64, f64, f64, f64)> = Vec::new();
    for (sx, s1, s2, r1, r2) in REFERENCE_CONFIGS {
        let row = (
            ov.sigma2_x.unwrap_or(sx),
            ov.sigma2_n1.unwrap_or(s1),
            ov.sigma2_n2.unwrap_or(s2),
            r1,
            r2,
        );
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    rows
}

fn saturation(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::new(Check::Saturation);
    let grid = linear_grid(0.0, 3.0, 0.05)?;
    let rows = saturation_rows(&cfg.gaussian);
    for metric in [Metric::LogLoss, Metric::Quadratic] {
        let mut curves = Vec::with_capacity(rows.len());
        for &(sx, s1, s2, r1, r2) in &rows {
            let params = GaussianCeoParams::new(sx, s1, s2)?;
            let rep = saturation_threshold(&params, r1, r2, None, metric, cfg.saturation_tol, &grid, &cfg.search)?;
            let tag = format!("{metric} sx2={sx} sn1={s1} sn2={s2} R=({r1},{r2})");
            let worst_rise = rep
                .curve
                .windows(2)
                .map(|w| w[1].min_d - w[0].min_d)
                .fold(f64::NEG_INFINITY, f64::max);
            o.record(worst_rise <= SLACK, || format!("{tag}: curve rises by {worst_rise:e}"));
            o.record(rep.l1_star.is_some(), || {
                format!(
                    "{tag}: no saturation on [0,3]; D*(3)={} D*(inf)={}",
                    rep.curve.last().map_or(f64::NAN, |r| r.min_d),
                    rep.unconstrained.min_d
                )
            });
            if let Some(l) = rep.l1_star {
                o.note(format!("{tag}: L1*={l:.2} D*(inf)={:.9}", rep.unconstrained.min_d));
            }
            curves.push(((sx, s1, s2, r1, r2), rep.curve));
        }
        // A larger R1 never hurts.
        for (a, ca) in &curves {
            for (b, cb) in &curves {
                if (a.0, a.1, a.2, a.4) == (b.0, b.1, b.2, b.4) && a.3 > b.3 {
                    let worst = ca
                        .iter()
                        .zip(cb)
                        .map(|(x, y)| x.min_d - y.min_d)
                        .fold(f64::NEG_INFINITY, f64::max);
                    o.record(worst <= SLACK, || {
                        format!("{metric}: R1={} curve exceeds R1={} curve by {worst:e}", a.3, b.3)
                    });
                }
            }
        }
    }
    Ok(o)
}

/// Uniform binary source seen by both agents through a BSC with the given
/// crossover, with `Ũ_k = Y_k`.
pub fn counterexample_instance(crossover: f64) -> Result<(DiscreteCeoModel, AuxiliarySystem)> {
    let model = DiscreteCeoModel::binary_symmetric(0.5, crossover, crossover, 0.5)?.drop_side_information();
    let aux = AuxiliarySystem::u_layer(vec![1.0], identity_kernel(1, 2), identity_kernel(1, 2))?;
    Ok((model, aux))
}

fn counterexample() -> Result<CheckOutcome> {
    let mut o = CheckOutcome::new(Check::Counterexample);
    let (model, aux) = counterexample_instance(0.1)?;
    let rep = equivocation_counterexample(&model, &aux)?;
    let h = -(0.1f64 * 0.1f64.log2() + 0.9 * 0.9f64.log2());
    o.record((rep.gap - h).abs() <= EQ_TOL, || {
        format!("gap {} differs from h2(0.1) = {h}", rep.gap)
    });
    o.record(rep.consistent && rep.strict, || {
        format!("consistent={} strict={}", rep.consistent, rep.strict)
    });
    Ok(o)
}

fn coincidence(cfg: &VerifyConfig, rng: &mut SeededRng) -> Result<CheckOutcome> {
    use rand::Rng;
    let mut o = CheckOutcome::new(Check::Coincidence);
    for (name, model, aux) in random_instances(cfg, rng, true) {
        let at = large_distortion_coincidence(&model, &aux, None)?;
        let above = large_distortion_coincidence(&model, &aux, Some(at.threshold + rng.random::<f64>() * 4.0))?;
        for r in [at, above] {
            o.record(r.outer_feasible && r.inner_feasible && r.dominated, || {
                format!(
                    "{name}: D={} outer={} inner={} dominated={}",
                    r.distortion, r.outer_feasible, r.inner_feasible, r.dominated
                )
            });
        }
    }
    Ok(o)
}

/// Convenience for callers that only need the curve (used by the CLI).
pub fn table_curve(
    row: (f64, f64, f64, f64, f64),
    metric: Metric,
    grid: &[f64],
    cfg: &SearchConfig,
) -> Result<Vec<crate::gaussian::CurveRow>> {
    let (sx, s1, s2, r1, r2) = row;
    leakage_curve(&GaussianCeoParams::new(sx, s1, s2)?, r1, r2, grid, None, metric, cfg)
}
