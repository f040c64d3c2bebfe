use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use ceo_leakage::discrete::{
    dominance_report, equivocation_counterexample, extreme_points as outer_extreme_points, inner_bound_constraints,
    logloss_inner_no_si, logloss_inner_si, logloss_outer_no_si, logloss_outer_si, outer_bound_constraints, xi_k,
    xi_prime, CounterexampleReport, InformationQuantities,
};
use ceo_leakage::gaussian::{leakage_curve, linear_grid, membership, CurveRow, MembershipVerdict, REFERENCE_CONFIGS};
use ceo_leakage::verify::{self, Check, GaussianOverrides, VerifyConfig};
use ceo_leakage::{
    build_joint, load_instance, ConstraintSet, DiscreteDistortion, Error, GaussianCeoParams, Instance, Metric,
    RateTuple, SearchConfig,
};
use serde::Serialize;

use crate::output::{csv, emit, json};
use crate::{
    CounterexampleArgs, DiscreteEvalArgs, ExtremePointsArgs, Failure, Format, GaussianCurveArgs, GaussianMemberArgs,
    SearchArgs, VarianceArgs, VerifyArgs,
};

type CmdResult = Result<(), Failure>;

pub const CURVE_HEADER: [&str; 4] = ["L1", "minD", "r1_witness", "r2_witness"];
pub const EXTREME_HEADER: [&str; 10] = [
    "label",
    "R1",
    "R2",
    "L1",
    "L2",
    "D",
    "feasible",
    "binding_verified",
    "dominated",
    "dominator",
];

fn search_config(a: &SearchArgs) -> anyhow::Result<SearchConfig> {
    let cfg = SearchConfig {
        grid: a.grid,
        r_max: a.r_max,
        headroom: a.headroom,
        tol: a.tol,
    };
    cfg.validate()?;
    if a.headroom.is_nan() || a.headroom < 0.0 {
        bail!("headroom must be non-negative, got {}", a.headroom);
    }
    Ok(cfg)
}

fn params(v: &VarianceArgs) -> anyhow::Result<GaussianCeoParams> {
    let need = |x: Option<f64>, flag: &str| x.ok_or_else(|| anyhow!("--{flag} is required"));
    Ok(GaussianCeoParams::new(
        need(v.sigma_x2, "sigma-x2")?,
        need(v.sigma_n1, "sigma-n1")?,
        need(v.sigma_n2, "sigma-n2")?,
    )?)
}

fn parse_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        bail!("--l1-grid must be start:stop:step, got '{spec}'");
    };
    let num = |s: &str| -> anyhow::Result<f64> {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("--l1-grid: '{s}' is not a number"))
    };
    Ok(linear_grid(num(a)?, num(b)?, num(c)?)?)
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn curve_csv(rows: &[CurveRow]) -> anyhow::Result<Vec<u8>> {
    csv(
        &CURVE_HEADER,
        rows.iter().map(|r| [num(r.l1), num(r.min_d), num(r.r1), num(r.r2)]),
    )
}

pub fn gaussian_curve(a: GaussianCurveArgs) -> CmdResult {
    let cfg = search_config(&a.search)?;
    let grid = parse_grid(&a.l1_grid)?;
    let metric: Metric = a.metric.into();
    if a.table1 {
        let dir = a
            .out
            .as_deref()
            .ok_or_else(|| anyhow!("--table1 writes one file per configuration and needs --out <directory>"))?;
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, (sx, s1, s2, r1, r2)) in REFERENCE_CONFIGS.into_iter().enumerate() {
            let p = GaussianCeoParams::new(sx, s1, s2)?;
            let rows = leakage_curve(&p, r1, r2, &grid, a.l2, metric, &cfg)?;
            let path = dir.join(format!("table1_row{}_{}.csv", i + 1, metric.name()));
            emit(Some(&path), &curve_csv(&rows)?)?;
        }
        return Ok(());
    }
    let p = params(&a.variances)?;
    let r1 = a.r1.ok_or_else(|| anyhow!("--r1 is required (or use --table1)"))?;
    let r2 = a.r2.ok_or_else(|| anyhow!("--r2 is required (or use --table1)"))?;
    let rows = leakage_curve(&p, r1, r2, &grid, a.l2, metric, &cfg)?;
    emit(a.out.as_deref(), &curve_csv(&rows)?)?;
    Ok(())
}

#[derive(Serialize)]
struct MemberReport {
    metric: &'static str,
    tuple: [Option<f64>; 5],
    #[serde(flatten)]
    verdict: MembershipVerdict,
}

/// JSON has no infinity; unconstrained rates are written as `null`.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn gaussian_member(a: GaussianMemberArgs) -> CmdResult {
    let cfg = search_config(&a.search)?;
    let p = params(&a.variances)?;
    let metric: Metric = a.metric.into();
    let t = RateTuple::new(a.r1, a.r2, a.l1, a.l2, a.d);
    let verdict = membership(&p, &t, metric, &cfg)?;
    let report = MemberReport {
        metric: metric.name(),
        tuple: t.coords().map(finite),
        verdict,
    };
    emit(a.out.as_deref(), &json(&report)?)?;
    Ok(())
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    load_instance(path).with_context(|| format!("reading model file {}", path.display()))
}

#[derive(Serialize)]
struct LogLossSets {
    inner_si: ConstraintSet,
    outer_si: ConstraintSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    inner_no_si: Option<ConstraintSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outer_no_si: Option<ConstraintSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    no_si_skipped: Option<String>,
}

#[derive(Serialize)]
struct EvalReport {
    schema: u32,
    distortion: DiscreteDistortion,
    xi1: f64,
    xi2: f64,
    xi_prime: f64,
    information_quantities: InformationQuantities,
    inner: ConstraintSet,
    outer: ConstraintSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    logloss: Option<LogLossSets>,
}

fn eval_report(inst: &Instance) -> anyhow::Result<EvalReport> {
    let (model, aux) = (&inst.model, &inst.aux);
    let joint = build_joint(model, aux)?;
    let logloss = if inst.distortion == DiscreteDistortion::LogLoss {
        let (inner_no_si, outer_no_si, no_si_skipped) = match logloss_inner_no_si(model, aux) {
            Ok(inner) => (Some(inner), Some(logloss_outer_no_si(model, aux)?), None),
            Err(Error::Precondition(msg)) => (None, None, Some(msg)),
            Err(e) => return Err(e.into()),
        };
        Some(LogLossSets {
            inner_si: logloss_inner_si(model, aux)?,
            outer_si: logloss_outer_si(model, aux)?,
            inner_no_si,
            outer_no_si,
            no_si_skipped,
        })
    } else {
        None
    };
    Ok(EvalReport {
        schema: ceo_leakage::document::SCHEMA_VERSION,
        distortion: inst.distortion.clone(),
        xi1: xi_k(&joint, 1)?,
        xi2: xi_k(&joint, 2)?,
        xi_prime: xi_prime(&joint)?,
        information_quantities: InformationQuantities::from_joint(&joint),
        inner: inner_bound_constraints(model, aux, &inst.distortion)?,
        outer: outer_bound_constraints(model, aux, &inst.distortion)?,
        logloss,
    })
}

fn eval_table(r: &EvalReport) -> String {
    let mut s = format!("xi1 = {}\nxi2 = {}\nxi' = {}\n", r.xi1, r.xi2, r.xi_prime);
    let mut section = |title: &str, cs: &ConstraintSet| {
        s.push_str(&format!("\n[{title}]\n{}", cs.to_table()));
    };
    section("inner (general)", &r.inner);
    section("outer (general)", &r.outer);
    if let Some(l) = &r.logloss {
        section("inner (log-loss, side information)", &l.inner_si);
        section("outer (log-loss, side information)", &l.outer_si);
        if let (Some(i), Some(o)) = (&l.inner_no_si, &l.outer_no_si) {
            section("inner (log-loss, no side information)", i);
            section("outer (log-loss, no side information)", o);
        }
    }
    s
}

pub fn discrete_eval(a: DiscreteEvalArgs) -> CmdResult {
    let inst = load(&a.input)?;
    let report = eval_report(&inst)?;
    let bytes = match a.format {
        Format::Json => json(&report)?,
        Format::Table => eval_table(&report).into_bytes(),
    };
    emit(a.out.as_deref(), &bytes)?;
    Ok(())
}

pub fn extreme_points(a: ExtremePointsArgs) -> CmdResult {
    let inst = load(&a.input)?;
    let (model, aux) = if a.ignore_side_information {
        (inst.model.drop_side_information(), inst.aux.with_constant_v())
    } else {
        (inst.model, inst.aux)
    };
    let points = outer_extreme_points(&model, &aux).map_err(|e| match e {
        Error::Precondition(msg) => anyhow!("{msg}; pass --ignore-side-information to evaluate without Z and V"),
        e => anyhow::Error::from(e),
    })?;
    let dom = dominance_report(&model, &aux)?;
    let rows = points.iter().zip(&dom.entries).map(|(p, d)| {
        let c = p.point.coords();
        [
            p.label.clone(),
            num(c[0]),
            num(c[1]),
            num(c[2]),
            num(c[3]),
            num(c[4]),
            p.feasibility.feasible.to_string(),
            p.verified.to_string(),
            (d.dominated && d.dominator_feasible).to_string(),
            d.dominator_source.clone(),
        ]
    });
    emit(a.out.as_deref(), &csv(&EXTREME_HEADER, rows)?)?;
    let failed: Vec<&str> = points
        .iter()
        .zip(&dom.entries)
        .filter(|(p, d)| !(p.feasibility.feasible && d.dominated && d.dominator_feasible))
        .map(|(p, _)| p.label.as_str())
        .collect();
    if failed.is_empty() {
        eprintln!("dominance verdict: PASS");
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "dominance fails at {}",
            failed.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct CounterexampleOut {
    source: String,
    verdict: &'static str,
    #[serde(flatten)]
    report: CounterexampleReport,
}

pub fn counterexample(a: CounterexampleArgs) -> CmdResult {
    let (source, model, aux) = match &a.input {
        Some(path) => {
            let inst = load(path)?;
            (path.display().to_string(), inst.model, inst.aux)
        }
        None => {
            let (m, u) = verify::counterexample_instance(a.crossover)?;
            (format!("binary symmetric, crossover {}", a.crossover), m, u)
        }
    };
    let report = equivocation_counterexample(&model, &aux)?;
    let verdict = if report.strict { "strict" } else { "not strict" };
    let consistent = report.consistent;
    emit(
        a.out.as_deref(),
        &json(&CounterexampleOut {
            source,
            verdict,
            report,
        })?,
    )?;
    if consistent {
        Ok(())
    } else {
        Err(Failure::Verification(
            "outer cap minus inner maximum differs from the gap".into(),
        ))
    }
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let checks = if a.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        a.checks
            .iter()
            .map(|c| c.parse::<Check>())
            .collect::<Result<Vec<_>, _>>()?
    };
    let instance = a.input.as_deref().map(load).transpose()?;
    let cfg = VerifyConfig {
        seed: a.seed,
        instances: a.instances,
        checks,
        gaussian: GaussianOverrides {
            sigma2_x: a.variances.sigma_x2,
            sigma2_n1: a.variances.sigma_n1,
            sigma2_n2: a.variances.sigma_n2,
        },
        search: search_config(&a.search)?,
        saturation_tol: a.saturation_tol,
        instance,
    };
    for v in [cfg.gaussian.sigma2_x, cfg.gaussian.sigma2_n1, cfg.gaussian.sigma2_n2]
        .into_iter()
        .flatten()
    {
        if v <= 0.0 || !v.is_finite() {
            return Err(anyhow!("variances must be positive and finite, got {v}").into());
        }
    }
    let summary = verify::run(&cfg)?;
    if let Some(path) = &a.json {
        emit(Some(path), &json(&summary)?)?;
    }
    emit(None, summary.render().as_bytes())?;
    if summary.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = summary
            .outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.check.name())
            .collect();
        Err(Failure::Verification(failed.join(", ")))
    }
}
