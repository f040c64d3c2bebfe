//! Exact discrete information measures.
//!
//! A [`JointDistribution`] is a dense probability tensor over the nine
//! variables `(Q, X, Z, Y1, Y2, U1, U2, V1, V2)` assembled from the product
//! factorization
//!
//! ```text
//! P_X P_{Z|X} P_Q  prod_k  P_{Yk|X} P_{Uk|Yk,Q} P_{Vk|Uk,Q}
//! ```
//!
//! Every information quantity used by the bound evaluators reduces to
//! [`JointDistribution::entropy`], [`JointDistribution::conditional_entropy`]
//! and [`JointDistribution::cmi`]. All logarithms are base two, zero-mass
//! cells contribute nothing, and results within 1e-12 of zero are snapped to zero.

use std::fmt;
use std::str::FromStr;

use ndarray::{ArrayD, Axis, IxDyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the sum of every probability vector.
pub const PROB_TOL: f64 = 1e-12;

/// Values in `[-CLAMP_TOL, 0)` are reported as exactly zero.
pub const CLAMP_TOL: f64 = 1e-12;

/// The random variables of the two-agent model, in tensor axis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    Q,
    X,
    Z,
    Y1,
    Y2,
    U1,
    U2,
    V1,
    V2,
}

impl Var {
    pub const ALL: [Var; 9] = [
        Var::Q,
        Var::X,
        Var::Z,
        Var::Y1,
        Var::Y2,
        Var::U1,
        Var::U2,
        Var::V1,
        Var::V2,
    ];

    pub fn axis(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "Q",
            Var::X => "X",
            Var::Z => "Z",
            Var::Y1 => "Y1",
            Var::Y2 => "Y2",
            Var::U1 => "U1",
            Var::U2 => "U2",
            Var::V1 => "V1",
            Var::V2 => "V2",
        }
    }

    /// Observation of agent `k` (1 or 2).
    pub fn y(k: usize) -> Var {
        if k == 1 {
            Var::Y1
        } else {
            Var::Y2
        }
    }

    pub fn u(k: usize) -> Var {
        if k == 1 {
            Var::U1
        } else {
            Var::U2
        }
    }

    pub fn v(k: usize) -> Var {
        if k == 1 {
            Var::V1
        } else {
            Var::V2
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .iter()
            .copied()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownVariable(s.to_string()))
    }
}

/// Parses a comma- or whitespace-separated list such as `"X, U1"`.
pub fn parse_vars(s: &str) -> Result<Vec<Var>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(Var::from_str)
        .collect()
}

pub(crate) fn check_prob_vector(name: &str, row: usize, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::EmptyAlphabet { name: name.to_string() });
    }
    let sum: f64 = v.iter().sum();
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min >= 0.0) || !((sum - 1.0).abs() <= PROB_TOL) {
        return Err(Error::NotStochastic {
            name: name.to_string(),
            row,
            sum,
            min,
        });
    }
    Ok(())
}

fn check_kernel(name: &str, rows: usize, cols: Option<usize>, k: &[Vec<f64>]) -> Result<usize> {
    if k.len() != rows {
        return Err(Error::Dimension {
            kernel: name.to_string(),
            expected: format!("{rows} rows"),
            found: format!("{} rows", k.len()),
        });
    }
    let width = cols.unwrap_or_else(|| k.first().map_or(0, Vec::len));
    for (i, row) in k.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Dimension {
                kernel: name.to_string(),
                expected: format!("{width} columns"),
                found: format!("{} columns in row {i}", row.len()),
            });
        }
        check_prob_vector(name, i, row)?;
    }
    Ok(width)
}

/// Source distribution and the three observation channels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteCeoModel {
    px: Vec<f64>,
    py1_given_x: Vec<Vec<f64>>,
    py2_given_x: Vec<Vec<f64>>,
    pz_given_x: Vec<Vec<f64>>,
}

impl DiscreteCeoModel {
    pub fn new(
        px: Vec<f64>,
        py1_given_x: Vec<Vec<f64>>,
        py2_given_x: Vec<Vec<f64>>,
        pz_given_x: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_prob_vector("px", 0, &px)?;
        let nx = px.len();
        check_kernel("py1_given_x", nx, None, &py1_given_x)?;
        check_kernel("py2_given_x", nx, None, &py2_given_x)?;
        check_kernel("pz_given_x", nx, None, &pz_given_x)?;
        Ok(Self {
            px,
            py1_given_x,
            py2_given_x,
            pz_given_x,
        })
    }

    /// Model whose eavesdropper observation is a constant.
    pub fn without_side_information(
        px: Vec<f64>,
        py1_given_x: Vec<Vec<f64>>,
        py2_given_x: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let z = vec![vec![1.0]; px.len()];
        Self::new(px, py1_given_x, py2_given_x, z)
    }

    /// Binary source with three binary symmetric channels.
    pub fn binary_symmetric(p1: f64, crossover_y1: f64, crossover_y2: f64, crossover_z: f64) -> Result<Self> {
        let bsc = |e: f64| vec![vec![1.0 - e, e], vec![e, 1.0 - e]];
        Self::new(
            vec![1.0 - p1, p1],
            bsc(crossover_y1),
            bsc(crossover_y2),
            bsc(crossover_z),
        )
    }

    pub fn px(&self) -> &[f64] {
        &self.px
    }

    pub fn py_given_x(&self, k: usize) -> &[Vec<f64>] {
        if k == 1 {
            &self.py1_given_x
        } else {
            &self.py2_given_x
        }
    }

    pub fn pz_given_x(&self) -> &[Vec<f64>] {
        &self.pz_given_x
    }

    pub fn nx(&self) -> usize {
        self.px.len()
    }

    pub fn ny(&self, k: usize) -> usize {
        self.py_given_x(k)[0].len()
    }

    pub fn nz(&self) -> usize {
        self.pz_given_x[0].len()
    }

    /// Copy of the model with `Z` replaced by a constant.
    pub fn drop_side_information(&self) -> Self {
        Self {
            pz_given_x: vec![vec![1.0]; self.nx()],
            ..self.clone()
        }
    }
}

/// Upper limits on the auxiliary alphabet sizes, expressed relative to `|Y_k|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CardinalityCaps {
    /// `|V_k| <= |Y_k| + v_offset`
    pub v_offset: usize,
    /// `|U_k| <= (|Y_k| + u_a)(|Y_k| + u_b)`
    pub u_a: usize,
    pub u_b: usize,
    pub q_max: usize,
}

impl Default for CardinalityCaps {
    /// Caps attached to the general-distortion inner bound.
    fn default() -> Self {
        Self {
            v_offset: 8,
            u_a: 8,
            u_b: 6,
            q_max: 6,
        }
    }
}

impl CardinalityCaps {
    pub fn general_outer() -> Self {
        Self {
            v_offset: 10,
            u_a: 10,
            u_b: 5,
            q_max: 6,
        }
    }

    pub fn logloss_side_information_outer() -> Self {
        Self {
            v_offset: 9,
            u_a: 9,
            u_b: 4,
            q_max: 6,
        }
    }

    pub fn check(&self, model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<()> {
        if aux.nq() > self.q_max {
            return Err(Error::CardinalityCap {
                name: "Q".into(),
                size: aux.nq(),
                cap: self.q_max,
            });
        }
        for k in 1..=2 {
            let ny = model.ny(k);
            let u_cap = (ny + self.u_a) * (ny + self.u_b);
            if aux.nu(k) > u_cap {
                return Err(Error::CardinalityCap {
                    name: format!("U{k}"),
                    size: aux.nu(k),
                    cap: u_cap,
                });
            }
            if aux.nv(k) > ny + self.v_offset {
                return Err(Error::CardinalityCap {
                    name: format!("V{k}"),
                    size: aux.nv(k),
                    cap: ny + self.v_offset,
                });
            }
        }
        Ok(())
    }
}

/// Conditional kernel indexed `[q][input][output]`.
pub type QKernel = Vec<Vec<Vec<f64>>>;

/// Time-sharing weights and the per-agent test channels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxiliarySystem {
    pq: Vec<f64>,
    pu1_given_y1_q: QKernel,
    pu2_given_y2_q: QKernel,
    pv1_given_u1_q: QKernel,
    pv2_given_u2_q: QKernel,
}

fn check_qkernel(name: &str, nq: usize, ninput: Option<usize>, k: &QKernel) -> Result<(usize, usize)> {
    if k.len() != nq {
        return Err(Error::Dimension {
            kernel: name.to_string(),
            expected: format!("{nq} time-sharing slices"),
            found: format!("{}", k.len()),
        });
    }
    let nin = ninput.unwrap_or_else(|| k[0].len());
    let mut nout = None;
    for (q, slice) in k.iter().enumerate() {
        let w = check_kernel(&format!("{name}[q={q}]"), nin, nout, slice)?;
        nout = Some(w);
    }
    Ok((nin, nout.unwrap_or(0)))
}

/// Deterministic kernel `[q][input][output]` that maps every input to output 0.
pub fn constant_kernel(nq: usize, ninput: usize) -> QKernel {
    vec![vec![vec![1.0]; ninput]; nq]
}

/// Identity kernel `[q][i][i] = 1`.
pub fn identity_kernel(nq: usize, n: usize) -> QKernel {
    let eye: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    vec![eye; nq]
}

impl AuxiliarySystem {
    pub fn new(
        pq: Vec<f64>,
        pu1_given_y1_q: QKernel,
        pu2_given_y2_q: QKernel,
        pv1_given_u1_q: QKernel,
        pv2_given_u2_q: QKernel,
    ) -> Result<Self> {
        check_prob_vector("pq", 0, &pq)?;
        let nq = pq.len();
        let (_, nu1) = check_qkernel("pu1_given_y1_q", nq, None, &pu1_given_y1_q)?;
        let (_, nu2) = check_qkernel("pu2_given_y2_q", nq, None, &pu2_given_y2_q)?;
        check_qkernel("pv1_given_u1_q", nq, Some(nu1), &pv1_given_u1_q)?;
        check_qkernel("pv2_given_u2_q", nq, Some(nu2), &pv2_given_u2_q)?;
        Ok(Self {
            pq,
            pu1_given_y1_q,
            pu2_given_y2_q,
            pv1_given_u1_q,
            pv2_given_u2_q,
        })
    }

    /// U-layer only; `V1`, `V2` are constants.
    pub fn u_layer(pq: Vec<f64>, pu1_given_y1_q: QKernel, pu2_given_y2_q: QKernel) -> Result<Self> {
        let nq = pq.len();
        let nu = |k: &QKernel| k.first().and_then(|s| s.first()).map_or(0, Vec::len);
        let v1 = constant_kernel(nq, nu(&pu1_given_y1_q));
        let v2 = constant_kernel(nq, nu(&pu2_given_y2_q));
        Self::new(pq, pu1_given_y1_q, pu2_given_y2_q, v1, v2)
    }

    /// Every auxiliary variable constant, `|Q| = 1`.
    pub fn constant(model: &DiscreteCeoModel) -> Self {
        Self::u_layer(
            vec![1.0],
            constant_kernel(1, model.ny(1)),
            constant_kernel(1, model.ny(2)),
        )
        .expect("constant kernels are stochastic")
    }

    /// `U_k = Y_k`, `V_k` constant, `|Q| = 1`.
    pub fn observations(model: &DiscreteCeoModel) -> Self {
        Self::u_layer(
            vec![1.0],
            identity_kernel(1, model.ny(1)),
            identity_kernel(1, model.ny(2)),
        )
        .expect("identity kernels are stochastic")
    }

    /// Copy with `V_k = U_k` for both agents.
    pub fn with_v_equal_u(&self) -> Self {
        Self {
            pv1_given_u1_q: identity_kernel(self.nq(), self.nu(1)),
            pv2_given_u2_q: identity_kernel(self.nq(), self.nu(2)),
            ..self.clone()
        }
    }

    /// Copy with both `V_k` constant.
    pub fn with_constant_v(&self) -> Self {
        Self {
            pv1_given_u1_q: constant_kernel(self.nq(), self.nu(1)),
            pv2_given_u2_q: constant_kernel(self.nq(), self.nu(2)),
            ..self.clone()
        }
    }

    /// Copy with agent `k`'s auxiliaries `U_k`, `V_k` constant.
    pub fn with_constant_agent(&self, k: usize) -> Self {
        let mut out = self.clone();
        let u = constant_kernel(self.nq(), self.ny_expected(k));
        let v = constant_kernel(self.nq(), 1);
        if k == 1 {
            out.pu1_given_y1_q = u;
            out.pv1_given_u1_q = v;
        } else {
            out.pu2_given_y2_q = u;
            out.pv2_given_u2_q = v;
        }
        out
    }

    pub fn pq(&self) -> &[f64] {
        &self.pq
    }

    pub fn pu_given_y_q(&self, k: usize) -> &QKernel {
        if k == 1 {
            &self.pu1_given_y1_q
        } else {
            &self.pu2_given_y2_q
        }
    }

    pub fn pv_given_u_q(&self, k: usize) -> &QKernel {
        if k == 1 {
            &self.pv1_given_u1_q
        } else {
            &self.pv2_given_u2_q
        }
    }

    pub fn nq(&self) -> usize {
        self.pq.len()
    }

    pub fn nu(&self, k: usize) -> usize {
        self.pu_given_y_q(k)[0][0].len()
    }

    pub fn nv(&self, k: usize) -> usize {
        self.pv_given_u_q(k)[0][0].len()
    }

    fn ny_expected(&self, k: usize) -> usize {
        self.pu_given_y_q(k)[0].len()
    }
}

/// Dense joint tensor over `(Q, X, Z, Y1, Y2, U1, U2, V1, V2)`.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    p: ArrayD<f64>,
}

/// Builds the joint tensor after checking the default cardinality caps.
pub fn build_joint(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Result<JointDistribution> {
    build_joint_with_caps(model, aux, &CardinalityCaps::default())
}

pub fn build_joint_with_caps(
    model: &DiscreteCeoModel,
    aux: &AuxiliarySystem,
    caps: &CardinalityCaps,
) -> Result<JointDistribution> {
    for k in 1..=2 {
        if aux.ny_expected(k) != model.ny(k) {
            return Err(Error::Dimension {
                kernel: format!("pu{k}_given_y{k}_q"),
                expected: format!("{} input rows (|Y{k}|)", model.ny(k)),
                found: format!("{}", aux.ny_expected(k)),
            });
        }
    }
    caps.check(model, aux)?;

    let shape = [
        aux.nq(),
        model.nx(),
        model.nz(),
        model.ny(1),
        model.ny(2),
        aux.nu(1),
        aux.nu(2),
        aux.nv(1),
        aux.nv(2),
    ];
    let (pu1, pu2) = (aux.pu_given_y_q(1), aux.pu_given_y_q(2));
    let (pv1, pv2) = (aux.pv_given_u_q(1), aux.pv_given_u_q(2));
    let p = ArrayD::from_shape_fn(IxDyn(&shape), |ix| {
        let (q, x, z, y1, y2, u1, u2, v1, v2) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5], ix[6], ix[7], ix[8]);
        aux.pq[q]
            * model.px[x]
            * model.pz_given_x[x][z]
            * model.py1_given_x[x][y1]
            * model.py2_given_x[x][y2]
            * pu1[q][y1][u1]
            * pu2[q][y2][u2]
            * pv1[q][u1][v1]
            * pv2[q][u2][v2]
    });
    Ok(JointDistribution { p })
}

fn check_disjoint(sets: &[&[Var]]) -> Result<()> {
    let mut seen = [false; 9];
    for set in sets {
        for v in *set {
            if std::mem::replace(&mut seen[v.axis()], true) {
                return Err(Error::OverlappingVariables(v.to_string()));
            }
        }
    }
    Ok(())
}

fn clamp(x: f64) -> f64 {
    if x.abs() <= CLAMP_TOL {
        0.0
    } else {
        x
    }
}

impl JointDistribution {
    pub fn tensor(&self) -> &ArrayD<f64> {
        &self.p
    }

    pub fn size(&self, v: Var) -> usize {
        self.p.shape()[v.axis()]
    }

    pub fn total_mass(&self) -> f64 {
        self.p.sum()
    }

    /// Marginal over `vars`, with axes kept in canonical order.
    pub fn marginal(&self, vars: &[Var]) -> ArrayD<f64> {
        let mut keep = [false; 9];
        for v in vars {
            keep[v.axis()] = true;
        }
        let mut m = self.p.clone();
        for axis in (0..9).rev() {
            if !keep[axis] {
                m = m.sum_axis(Axis(axis));
            }
        }
        m
    }

    fn raw_entropy(&self, vars: &[Var]) -> f64 {
        if vars.is_empty() {
            return 0.0;
        }
        self.marginal(vars)
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    }

    /// `H(vars)` in bits.
    pub fn entropy(&self, vars: &[Var]) -> Result<f64> {
        check_disjoint(&[vars])?;
        Ok(clamp(self.raw_entropy(vars)))
    }

    /// `H(vars | given)` in bits.
    pub fn conditional_entropy(&self, vars: &[Var], given: &[Var]) -> Result<f64> {
        check_disjoint(&[vars, given])?;
        let joint: Vec<Var> = vars.iter().chain(given).copied().collect();
        Ok(clamp(self.raw_entropy(&joint) - self.raw_entropy(given)))
    }

    /// `I(A; B | C)` in bits.
    pub fn cmi(&self, a: &[Var], b: &[Var], c: &[Var]) -> Result<f64> {
        check_disjoint(&[a, b, c])?;
        let cat = |xs: &[&[Var]]| xs.iter().flat_map(|s| s.iter().copied()).collect::<Vec<_>>();
        let h_ac = self.raw_entropy(&cat(&[a, c]));
        let h_bc = self.raw_entropy(&cat(&[b, c]));
        let h_abc = self.raw_entropy(&cat(&[a, b, c]));
        let h_c = self.raw_entropy(c);
        Ok(clamp(h_ac + h_bc - h_abc - h_c))
    }

    /// `I(A; B)` in bits.
    pub fn mutual_information(&self, a: &[Var], b: &[Var]) -> Result<f64> {
        self.cmi(a, b, &[])
    }

    /// `H(X | U1, U2, Q)`: the log-loss distortion achieved by the posterior reproduction.
    pub fn logloss_distortion(&self) -> f64 {
        self.conditional_entropy(&[Var::X], &[Var::U1, Var::U2, Var::Q])
            .expect("fixed disjoint sets")
    }

    /// Minimum of `E[d(X, x̂(U1, U2, Q))]` over deterministic reproduction maps.
    ///
    /// `distortion[x][xhat]` is the per-letter cost; the minimization splits
    /// across `(u1, u2, q)` cells.
    pub fn expected_distortion(&self, distortion: &[Vec<f64>]) -> Result<f64> {
        let nx = self.size(Var::X);
        if distortion.len() != nx {
            return Err(Error::Dimension {
                kernel: "distortion".into(),
                expected: format!("{nx} rows (|X|)"),
                found: format!("{}", distortion.len()),
            });
        }
        let nhat = distortion[0].len();
        if nhat == 0 || distortion.iter().any(|r| r.len() != nhat) {
            return Err(Error::Dimension {
                kernel: "distortion".into(),
                expected: "equal, non-empty rows".into(),
                found: "ragged rows".into(),
            });
        }
        // axes: Q, X, U1, U2
        let m = self.marginal(&[Var::Q, Var::X, Var::U1, Var::U2]);
        let (nq, nu1, nu2) = (m.shape()[0], m.shape()[2], m.shape()[3]);
        let mut total = 0.0;
        for q in 0..nq {
            for u1 in 0..nu1 {
                for u2 in 0..nu2 {
                    let best = (0..nhat)
                        .map(|xh| (0..nx).map(|x| m[[q, x, u1, u2]] * distortion[x][xh]).sum::<f64>())
                        .fold(f64::INFINITY, f64::min);
                    total += best;
                }
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn constant_auxiliaries_embed_the_model() {
        let model = DiscreteCeoModel::binary_symmetric(0.5, 0.1, 0.1, 0.1).unwrap();
        let joint = build_joint(&model, &AuxiliarySystem::constant(&model)).unwrap();
        assert_eq!(joint.tensor().shape(), &[1, 2, 2, 2, 2, 1, 1, 1, 1]);
        for x in 0..2 {
            for z in 0..2 {
                for y1 in 0..2 {
                    for y2 in 0..2 {
                        let want =
                            0.5 * model.pz_given_x()[x][z] * model.py_given_x(1)[x][y1] * model.py_given_x(2)[x][y2];
                        let got = joint.tensor()[[0, x, z, y1, y2, 0, 0, 0, 0]];
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_channels_put_mass_on_the_diagonal() {
        let eye = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let model = DiscreteCeoModel::without_side_information(vec![1.0 / 3.0; 3], eye.clone(), eye.clone());
        // 1/3 * 3 is not exactly 1 in floating point but well within tolerance
        let model = model.unwrap();
        let aux = AuxiliarySystem::new(
            vec![1.0],
            identity_kernel(1, 3),
            identity_kernel(1, 3),
            identity_kernel(1, 3),
            identity_kernel(1, 3),
        )
        .unwrap();
        let joint = build_joint(&model, &aux).unwrap();
        for (ix, &p) in joint.tensor().indexed_iter() {
            let x = ix[1];
            let diagonal = [ix[3], ix[4], ix[5], ix[6], ix[7], ix[8]].iter().all(|&i| i == x);
            if diagonal {
                assert!((p - 1.0 / 3.0).abs() < 1e-15);
            } else {
                assert_eq!(p, 0.0);
            }
        }
    }

    #[test]
    fn basic_measures() {
        let model = DiscreteCeoModel::binary_symmetric(0.5, 0.1, 0.2, 0.5).unwrap();
        let joint = build_joint(&model, &AuxiliarySystem::constant(&model)).unwrap();
        assert!((joint.entropy(&[Var::X]).unwrap() - 1.0).abs() < 1e-15);
        // Z is independent of X with crossover 1/2
        assert!(joint.mutual_information(&[Var::X], &[Var::Z]).unwrap().abs() < 1e-12);
        let i = joint.mutual_information(&[Var::X], &[Var::Y1]).unwrap();
        assert!((i - (1.0 - h2(0.1))).abs() < 1e-12);
        assert_eq!(joint.entropy(&[]).unwrap(), 0.0);
    }

    #[test]
    fn set_errors() {
        let model = DiscreteCeoModel::binary_symmetric(0.5, 0.1, 0.1, 0.1).unwrap();
        let joint = build_joint(&model, &AuxiliarySystem::constant(&model)).unwrap();
        assert!(matches!(
            joint.cmi(&[Var::X], &[Var::X], &[]),
            Err(Error::OverlappingVariables(_))
        ));
        assert!(matches!(
            joint.conditional_entropy(&[Var::Y1], &[Var::Q, Var::Y1]),
            Err(Error::OverlappingVariables(_))
        ));
        assert!(matches!("W".parse::<Var>(), Err(Error::UnknownVariable(_))));
        assert_eq!(parse_vars("x, u1 Q").unwrap(), vec![Var::X, Var::U1, Var::Q]);
    }

    #[test]
    fn kernel_validation_names_the_row() {
        let bad = vec![vec![0.9, 0.1], vec![0.5, 0.4]];
        let err = DiscreteCeoModel::without_side_information(vec![0.5, 0.5], bad, vec![vec![1.0]; 2]).unwrap_err();
        match err {
            Error::NotStochastic { name, row, .. } => {
                assert_eq!(name, "py1_given_x");
                assert_eq!(row, 1);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn mismatched_aux_is_rejected() {
        let model = DiscreteCeoModel::binary_symmetric(0.5, 0.1, 0.1, 0.1).unwrap();
        let aux = AuxiliarySystem::u_layer(vec![1.0], identity_kernel(1, 3), identity_kernel(1, 2)).unwrap();
        let err = build_joint(&model, &aux).unwrap_err();
        assert!(err.to_string().contains("pu1_given_y1_q"), "{err}");
    }

    #[test]
    fn cardinality_caps() {
        let model = DiscreteCeoModel::binary_symmetric(0.5, 0.1, 0.1, 0.1).unwrap();
        let pq = vec![1.0 / 7.0; 7];
        let aux = AuxiliarySystem::u_layer(pq, constant_kernel(7, 2), constant_kernel(7, 2));
        // 7 * (1/7) may miss 1.0 by an ulp; either way the cap must trip
        if let Ok(aux) = aux {
            assert!(matches!(build_joint(&model, &aux), Err(Error::CardinalityCap { .. })));
        }
    }

    #[test]
    fn hamming_distortion_picks_the_map() {
        let model = DiscreteCeoModel::binary_symmetric(0.5, 0.1, 0.3, 0.5).unwrap();
        let hamming = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let constant = build_joint(&model, &AuxiliarySystem::constant(&model)).unwrap();
        assert!((constant.expected_distortion(&hamming).unwrap() - 0.5).abs() < 1e-15);
        let obs = build_joint(&model, &AuxiliarySystem::observations(&model)).unwrap();
        // best guess from (Y1, Y2) is Y1: error probability 0.1
        assert!((obs.expected_distortion(&hamming).unwrap() - 0.1).abs() < 1e-12);
    }
}
