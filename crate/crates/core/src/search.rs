//! Minimization of `max_i f_i(r1, r2)` over a box `[0, r_max]^2`.
//!
//! The Gaussian constraint families have a special shape: for a fixed `r2`,
//! each `f_i` is monotone in `r1` (increasing when agent 1 is in `K`,
//! decreasing when it is in `S^c`, constant otherwise), so their maximum is
//! unimodal in `r1` and a golden-section search finds the exact inner
//! minimum. The outer search over `r2` is a dense grid followed by a
//! golden-section refinement inside the best grid cell.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Grid points per axis for the outer search.
    pub grid: usize,
    /// Explicit upper end of the `r` box; `None` derives it from the rates.
    pub r_max: Option<f64>,
    /// Extra bits added to the finite rates when `r_max` is derived.
    pub headroom: f64,
    /// Width at which golden-section searches stop.
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid: 201,
            r_max: None,
            headroom: 4.0,
            tol: 1e-12,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid must have at least 2 points, got {}",
                self.grid
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "r_max must be positive and finite, got {r}"
                )));
            }
        }
        Ok(())
    }

    /// `r_max` for the given rates: explicit value, or the sum of the finite
    /// rates plus the headroom.
    pub fn r_max_for(&self, rates: &[f64]) -> f64 {
        self.r_max
            .unwrap_or_else(|| rates.iter().filter(|r| r.is_finite()).sum::<f64>() + self.headroom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub r1: f64,
    pub r2: f64,
    pub value: f64,
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
/// Returns the best point seen, endpoints included.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut best = [(lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iters = 0;
    while (b - a) > tol && iters < 200 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    for cand in [(c, fc), (d, fd)] {
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}

/// Minimizes `objective(r1, r2)` over `[0, r_max]^2`, assuming it is unimodal
/// in `r1` for every fixed `r2`.
///
/// `seeds` are extra `(r1, r2)` candidates that are evaluated as-is and win
/// when they beat the search result. The result does not depend on the
/// number of worker threads.
pub fn minimize_max<F>(objective: F, r_max: f64, cfg: &SearchConfig, seeds: &[(f64, f64)]) -> Minimum
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let inner = |r2: f64| -> (f64, f64) { golden_section(|r1| objective(r1, r2), 0.0, r_max, cfg.tol) };
    let step = r_max / (cfg.grid - 1) as f64;
    let rows: Vec<(f64, f64, f64)> = (0..cfg.grid)
        .into_par_iter()
        .map(|i| {
            let r2 = if i + 1 == cfg.grid { r_max } else { i as f64 * step };
            let (r1, v) = inner(r2);
            (r1, r2, v)
        })
        .collect();
    let (best_i, &(mut r1, mut r2, mut value)) = rows
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .2.total_cmp(&b.1 .2).then(a.0.cmp(&b.0)))
        .expect("grid has at least two points");

    let lo = rows[best_i.saturating_sub(1)].1;
    let hi = rows[(best_i + 1).min(cfg.grid - 1)].1;
    let (r2_ref, v_ref) = golden_section(|r2| inner(r2).1, lo, hi, cfg.tol);
    if v_ref < value {
        r2 = r2_ref;
        let (r1_ref, v) = inner(r2);
        r1 = r1_ref;
        value = v;
    }

    for &(s1, s2) in seeds {
        let v = objective(s1, s2);
        if v < value {
            r1 = s1;
            r2 = s2;
            value = v;
        }
    }
    Minimum { r1, r2, value }
}
