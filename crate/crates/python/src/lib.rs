//! Python bindings (`import ceo_leakage`).

use std::collections::BTreeMap;

use ceo_leakage::discrete::{self, InformationQuantities};
use ceo_leakage::gaussian::{self, AuxRates, GaussianCeoParams, Metric};
use ceo_leakage::verify::{self, Check, VerifyConfig};
use ceo_leakage::{build_joint, ConstraintSet, Error, Instance, RateTuple, SearchConfig};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

/// `(constraint text, rhs)` per constraint.
type Rows = Vec<(String, f64)>;
/// `(achievable, witness (r1, r2), max_violation)`
type Verdict = (bool, Option<(f64, f64)>, f64);
/// `(label, (R1, R2, L1, L2, D), feasible, dominated)`
type ExtremeRow = (String, [f64; 5], bool, bool);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn metric(name: &str) -> PyResult<Metric> {
    name.parse().map_err(py_err)
}

fn rows(cs: &ConstraintSet) -> Rows {
    cs.iter().map(|c| (c.describe(), c.rhs)).collect()
}

/// Scalar Gaussian source observed by two agents: `Y_k = X + N_k`.
#[pyclass(name = "GaussianModel", frozen)]
struct PyGaussianModel {
    params: GaussianCeoParams,
}

#[pymethods]
impl PyGaussianModel {
    #[new]
    fn new(sigma_x2: f64, sigma_n1: f64, sigma_n2: f64) -> PyResult<Self> {
        Ok(Self {
            params: GaussianCeoParams::new(sigma_x2, sigma_n1, sigma_n2).map_err(py_err)?,
        })
    }

    #[getter]
    fn sigma_x2(&self) -> f64 {
        self.params.sigma2_x
    }

    #[getter]
    fn sigma_n1(&self) -> f64 {
        self.params.sigma2_n1
    }

    #[getter]
    fn sigma_n2(&self) -> f64 {
        self.params.sigma2_n2
    }

    /// The nine constraints at auxiliary rates `(r1, r2)` as `(text, rhs)`.
    #[pyo3(signature = (r1, r2, metric="logloss"))]
    fn constraints(&self, r1: f64, r2: f64, metric: &str) -> PyResult<Rows> {
        let m = self::metric(metric)?;
        Ok(rows(&gaussian::all_constraints(&self.params, AuxRates::new(r1, r2), m)))
    }

    /// `h(X | U_A)` for the agents in `active` (subset of `{1, 2}`).
    fn cond_entropy(&self, active: Vec<usize>, r1: f64, r2: f64) -> PyResult<f64> {
        if active.iter().any(|k| *k != 1 && *k != 2) {
            return Err(PyValueError::new_err("agents are numbered 1 and 2"));
        }
        let flags = [active.contains(&1), active.contains(&2)];
        Ok(gaussian::gaussian_cond_entropy(
            &self.params,
            flags,
            AuxRates::new(r1, r2),
        ))
    }

    /// `(min_d, r1_witness, r2_witness)`; `l2=None` leaves `L2` unconstrained.
    #[pyo3(signature = (r1, r2, l1, l2=None, metric="logloss"))]
    fn min_distortion(&self, r1: f64, r2: f64, l1: f64, l2: Option<f64>, metric: &str) -> PyResult<(f64, f64, f64)> {
        let row = gaussian::min_distortion(
            &self.params,
            r1,
            r2,
            l1,
            l2,
            self::metric(metric)?,
            &SearchConfig::default(),
        )
        .map_err(py_err)?;
        Ok((row.min_d, row.r1, row.r2))
    }

    /// Rows `(L1, min_d, r1_witness, r2_witness)`.
    #[pyo3(signature = (r1, r2, l1_grid, l2=None, metric="logloss"))]
    fn leakage_curve(
        &self,
        r1: f64,
        r2: f64,
        l1_grid: Vec<f64>,
        l2: Option<f64>,
        metric: &str,
    ) -> PyResult<Vec<(f64, f64, f64, f64)>> {
        let curve = gaussian::leakage_curve(
            &self.params,
            r1,
            r2,
            &l1_grid,
            l2,
            self::metric(metric)?,
            &SearchConfig::default(),
        )
        .map_err(py_err)?;
        Ok(curve.into_iter().map(|r| (r.l1, r.min_d, r.r1, r.r2)).collect())
    }

    /// Smallest grid `L1` from which the curve stays within `tol` of its limit.
    #[pyo3(signature = (r1, r2, l1_grid, l2=None, metric="logloss", tol=1e-6))]
    fn saturation_threshold(
        &self,
        r1: f64,
        r2: f64,
        l1_grid: Vec<f64>,
        l2: Option<f64>,
        metric: &str,
        tol: f64,
    ) -> PyResult<Option<f64>> {
        let rep = gaussian::saturation_threshold(
            &self.params,
            r1,
            r2,
            l2,
            self::metric(metric)?,
            tol,
            &l1_grid,
            &SearchConfig::default(),
        )
        .map_err(py_err)?;
        Ok(rep.l1_star)
    }

    /// `(achievable, witness, max_violation)` for the tuple `(R1, R2, L1, L2, D)`.
    #[pyo3(signature = (r1, r2, l1, l2, d, metric="logloss"))]
    #[allow(clippy::too_many_arguments)]
    fn membership(&self, r1: f64, r2: f64, l1: f64, l2: f64, d: f64, metric: &str) -> PyResult<Verdict> {
        let v = gaussian::membership(
            &self.params,
            &RateTuple::new(r1, r2, l1, l2, d),
            self::metric(metric)?,
            &SearchConfig::default(),
        )
        .map_err(py_err)?;
        Ok((v.achievable, v.witness.map(|w| (w.r1, w.r2)), v.max_violation))
    }

    fn __repr__(&self) -> String {
        format!(
            "GaussianModel(sigma_x2={}, sigma_n1={}, sigma_n2={})",
            self.params.sigma2_x, self.params.sigma2_n1, self.params.sigma2_n2
        )
    }
}

/// A discrete model with its auxiliary test channels, read from a model file.
#[pyclass(name = "DiscreteModel", frozen)]
struct PyDiscreteModel {
    inst: Instance,
}

#[pymethods]
impl PyDiscreteModel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inst: ceo_leakage::parse_instance(text).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inst: ceo_leakage::load_instance(path).map_err(py_err)?,
        })
    }

    fn information_quantities(&self) -> PyResult<BTreeMap<String, f64>> {
        let j = build_joint(&self.inst.model, &self.inst.aux).map_err(py_err)?;
        Ok(InformationQuantities::from_joint(&j)
            .iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect())
    }

    /// `(xi1, xi2, xi_prime)`
    fn xi(&self) -> PyResult<(f64, f64, f64)> {
        let j = build_joint(&self.inst.model, &self.inst.aux).map_err(py_err)?;
        Ok((
            discrete::xi_k(&j, 1).map_err(py_err)?,
            discrete::xi_k(&j, 2).map_err(py_err)?,
            discrete::xi_prime(&j).map_err(py_err)?,
        ))
    }

    fn inner_bound(&self) -> PyResult<Rows> {
        let i = &self.inst;
        Ok(rows(
            &discrete::inner_bound_constraints(&i.model, &i.aux, &i.distortion).map_err(py_err)?,
        ))
    }

    fn outer_bound(&self) -> PyResult<Rows> {
        let i = &self.inst;
        Ok(rows(
            &discrete::outer_bound_constraints(&i.model, &i.aux, &i.distortion).map_err(py_err)?,
        ))
    }

    /// Log-loss bounds: `side_information=True` for the eavesdropper-with-`Z` pair.
    #[pyo3(signature = (side_information=true))]
    fn logloss_bounds(&self, side_information: bool) -> PyResult<(Rows, Rows)> {
        let (m, a) = (&self.inst.model, &self.inst.aux);
        let (inner, outer) = if side_information {
            (discrete::logloss_inner_si(m, a), discrete::logloss_outer_si(m, a))
        } else {
            (discrete::logloss_inner_no_si(m, a), discrete::logloss_outer_no_si(m, a))
        };
        Ok((rows(&inner.map_err(py_err)?), rows(&outer.map_err(py_err)?)))
    }

    /// `(label, (R1, R2, L1, L2, D), feasible, dominated)` for P1..P10.
    fn extreme_points(&self) -> PyResult<Vec<ExtremeRow>> {
        let (m, a) = (&self.inst.model, &self.inst.aux);
        let points = discrete::extreme_points(m, a).map_err(py_err)?;
        let dom = discrete::dominance_report(m, a).map_err(py_err)?;
        Ok(points
            .into_iter()
            .zip(dom.entries)
            .map(|(p, d)| {
                (
                    p.label,
                    p.point.coords(),
                    p.feasibility.feasible,
                    d.dominated && d.dominator_feasible,
                )
            })
            .collect())
    }
}

#[pyfunction]
fn beta_to_r(sigma2_n: f64, beta: f64) -> PyResult<f64> {
    gaussian::beta_to_r(sigma2_n, beta).map_err(py_err)
}

#[pyfunction]
fn r_to_beta(sigma2_n: f64, r: f64) -> PyResult<f64> {
    gaussian::r_to_beta(sigma2_n, r).map_err(py_err)
}

/// `(gap, strict)` for the binary symmetric instance with `Ũ_k = Y_k`.
#[pyfunction]
#[pyo3(signature = (crossover=0.1))]
fn counterexample(crossover: f64) -> PyResult<(f64, bool)> {
    let (m, a) = verify::counterexample_instance(crossover).map_err(py_err)?;
    let rep = discrete::equivocation_counterexample(&m, &a).map_err(py_err)?;
    Ok((rep.gap, rep.strict))
}

/// Runs the seeded suites; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (seed=0, instances=100, checks=None))]
fn run_verify(seed: u64, instances: usize, checks: Option<Vec<String>>) -> PyResult<(bool, String)> {
    let checks = match checks {
        None => Check::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|n| n.parse::<Check>())
            .collect::<Result<_, _>>()
            .map_err(py_err)?,
    };
    let cfg = VerifyConfig {
        seed,
        instances,
        checks,
        ..Default::default()
    };
    let summary = verify::run(&cfg).map_err(py_err)?;
    Ok((summary.passed, summary.render()))
}

#[pymodule(name = "ceo_leakage")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussianModel>()?;
    m.add_class::<PyDiscreteModel>()?;
    m.add_function(wrap_pyfunction!(beta_to_r, m)?)?;
    m.add_function(wrap_pyfunction!(r_to_beta, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add("REFERENCE_CONFIGS", gaussian::REFERENCE_CONFIGS.to_vec())?;
    Ok(())
}
