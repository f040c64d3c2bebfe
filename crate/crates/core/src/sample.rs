//! Seeded random models and auxiliary systems for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::info::{AuxiliarySystem, DiscreteCeoModel, QKernel};
use crate::region::{ConstraintSet, RateTuple};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Flat Dirichlet draw.
pub fn prob_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

pub fn kernel<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows).map(|_| prob_vector(rng, cols)).collect()
}

pub fn q_kernel<R: Rng>(rng: &mut R, nq: usize, rows: usize, cols: usize) -> QKernel {
    (0..nq).map(|_| kernel(rng, rows, cols)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
    pub z: usize,
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet {
        x: 2,
        y1: 2,
        y2: 2,
        z: 2,
    };
}

pub fn random_model<R: Rng>(rng: &mut R, a: Alphabet) -> DiscreteCeoModel {
    DiscreteCeoModel::new(
        prob_vector(rng, a.x),
        kernel(rng, a.x, a.y1),
        kernel(rng, a.x, a.y2),
        kernel(rng, a.x, a.z),
    )
    .expect("random kernels are stochastic")
}

pub fn random_model_without_si<R: Rng>(rng: &mut R, a: Alphabet) -> DiscreteCeoModel {
    DiscreteCeoModel::without_side_information(prob_vector(rng, a.x), kernel(rng, a.x, a.y1), kernel(rng, a.x, a.y2))
        .expect("random kernels are stochastic")
}

/// Random two-layer auxiliary system with the given sizes.
pub fn random_aux<R: Rng>(
    rng: &mut R,
    model: &DiscreteCeoModel,
    nq: usize,
    nu: [usize; 2],
    nv: [usize; 2],
) -> AuxiliarySystem {
    AuxiliarySystem::new(
        prob_vector(rng, nq),
        q_kernel(rng, nq, model.ny(1), nu[0]),
        q_kernel(rng, nq, model.ny(2), nu[1]),
        q_kernel(rng, nq, nu[0], nv[0]),
        q_kernel(rng, nq, nu[1], nv[1]),
    )
    .expect("random kernels are stochastic")
}

/// Random auxiliary system with constant `V_k`.
pub fn random_u_layer<R: Rng>(rng: &mut R, model: &DiscreteCeoModel, nq: usize, nu: [usize; 2]) -> AuxiliarySystem {
    AuxiliarySystem::u_layer(
        prob_vector(rng, nq),
        q_kernel(rng, nq, model.ny(1), nu[0]),
        q_kernel(rng, nq, model.ny(2), nu[1]),
    )
    .expect("random kernels are stochastic")
}

/// Points on the boundary of a set made of rate constraints plus one pure `D`
/// constraint: random rates pushed along `(1,1,1,1)` until every rate
/// constraint holds, with `D` at its floor.
pub fn boundary_points<R: Rng>(rng: &mut R, cs: &ConstraintSet, n: usize, spread: f64) -> Vec<RateTuple> {
    let floor = cs
        .iter()
        .filter(|c| c.distortion && c.rates == [false; 4])
        .map(|c| c.rhs)
        .fold(0.0, f64::max);
    (0..n)
        .map(|_| {
            let mut x = [0.0; 4];
            for v in &mut x {
                *v = rng.random::<f64>() * spread;
            }
            let t = cs
                .iter()
                .filter(|c| !c.distortion)
                .map(|c| {
                    let width = c.rates.iter().filter(|on| **on).count() as f64;
                    (c.rhs - c.rate_sum(x)) / width
                })
                .fold(0.0, f64::max);
            RateTuple::new(x[0] + t, x[1] + t, x[2] + t, x[3] + t, floor)
        })
        .collect()
}
