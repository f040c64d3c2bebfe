use std::f64::consts::{E, PI};

use ceo_leakage::gaussian::{
    all_constraints, beta_to_r, gaussian_cond_entropy, leakage_curve, linear_grid, membership, min_distortion,
    min_distortion_without_leakage, r_to_beta, saturation_threshold, AuxRates, SubsetPair,
};
use ceo_leakage::{GaussianCeoParams, Metric, RateTuple, SearchConfig};
use proptest::prelude::*;

const PAIRS: [(&[usize], &[usize]); 9] = [
    (&[], &[]),
    (&[1], &[]),
    (&[1], &[1]),
    (&[2], &[]),
    (&[2], &[2]),
    (&[1, 2], &[]),
    (&[1, 2], &[1]),
    (&[1, 2], &[2]),
    (&[1, 2], &[1, 2]),
];

/// Transcription of the constraint family: for each `(S, K)`,
/// `sum_K R_k + sum_{S\K} L_k >= sum_K r_k + spectral(S^c) - g(D)`.
/// Returns `(rate coefficient for R1,R2,L1,L2, rhs without the D term)`.
fn oracle_rows(sx: f64, sn: [f64; 2], r: [f64; 2], quadratic: bool) -> Vec<([f64; 4], f64)> {
    PAIRS
        .iter()
        .map(|(s, k)| {
            let mut coef = [0.0; 4];
            let mut rhs = 0.0;
            let mut sum = 1.0 / sx;
            for j in 1..=2usize {
                if k.contains(&j) {
                    coef[j - 1] = 1.0;
                    rhs += r[j - 1];
                } else if s.contains(&j) {
                    coef[j + 1] = 1.0;
                }
                if !s.contains(&j) {
                    sum += (1.0 - 2f64.powf(-2.0 * r[j - 1])) / sn[j - 1];
                }
            }
            rhs += if quadratic {
                0.5 * (1.0 / sum).log2()
            } else {
                0.5 * (2.0 * PI * E / sum).log2()
            };
            (coef, rhs)
        })
        .collect()
}

fn dot(coef: [f64; 4], x: [f64; 4]) -> f64 {
    coef.iter().zip(x).filter(|(c, _)| **c != 0.0).map(|(c, v)| c * v).sum()
}

fn row1() -> GaussianCeoParams {
    GaussianCeoParams::new(2.0, 1.0, 1.0).unwrap()
}

#[test]
fn constraint_family_matches_transcription() {
    for (metric, quad) in [(Metric::LogLoss, false), (Metric::Quadratic, true)] {
        for &(r1, r2) in &[(0.3, 0.3), (0.0, 1.7), (2.5, 0.01)] {
            let cs = all_constraints(&row1(), AuxRates::new(r1, r2), metric);
            assert_eq!(cs.len(), 9);
            for (c, (coef, rhs)) in cs.iter().zip(oracle_rows(2.0, [1.0, 1.0], [r1, r2], quad)) {
                let mask: Vec<f64> = c.rates.iter().map(|b| if *b { 1.0 } else { 0.0 }).collect();
                assert_eq!(mask, coef.to_vec(), "{}", c.label);
                assert!((c.rhs - rhs).abs() < 1e-12, "{}: {} vs {}", c.label, c.rhs, rhs);
            }
        }
    }
}

#[test]
fn labelled_examples() {
    let p = row1();
    // S={1}, K={} quadratic at r2 = 0.5 gives D >= 2^{-2 L1}.
    let cs = all_constraints(&p, AuxRates::new(0.0, 0.5), Metric::Quadratic);
    let c = cs.get("S={1},K={}").unwrap();
    for l1 in [0.0, 0.3, 1.0] {
        assert!((c.distortion_lower_bound([0.0, 0.0, l1, 0.0]) - 2f64.powf(-2.0 * l1)).abs() < 1e-12);
    }
    // S={1,2}, K={1,2} at r = 0 is R1 + R2 + D >= h(X).
    let cs = all_constraints(&p, AuxRates::new(0.0, 0.0), Metric::LogLoss);
    assert!((cs.rhs("S={1,2},K={1,2}").unwrap() - p.source_entropy()).abs() < 1e-12);
    // r = inf: floor uses every observation.
    let cs = all_constraints(&p, AuxRates::new(f64::INFINITY, f64::INFINITY), Metric::LogLoss);
    let floor = 0.5 * (2.0 * PI * E / (0.5 + 1.0 + 1.0)).log2();
    assert!((cs.rhs("S={},K={}").unwrap() - floor).abs() < 1e-12);
}

#[test]
fn membership_matches_exhaustive_grid() {
    let p = row1();
    let (r1, r2, l1) = (0.5, 0.5, 0.2);
    for (metric, quad) in [(Metric::LogLoss, false), (Metric::Quadratic, true)] {
        let r_max = r1 + r2 + l1 + 4.0;
        let n = 2001;
        let rates = [r1, r2, l1, f64::INFINITY];
        // Every constraint carries g(D) with unit weight, so one sweep gives
        // the smallest achievable g(D) over the grid.
        let mut g_min = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                let a = [i as f64 * r_max / (n - 1) as f64, j as f64 * r_max / (n - 1) as f64];
                let need = oracle_rows(2.0, [1.0, 1.0], a, quad)
                    .into_iter()
                    .filter(|(c, _)| c[3] == 0.0)
                    .map(|(c, rhs)| rhs - dot(c, rates))
                    .fold(f64::NEG_INFINITY, f64::max);
                g_min = g_min.min(need);
            }
        }
        let to_d = |g: f64| if quad { 2f64.powf(2.0 * g) } else { g };
        // Test well inside and well outside; the grid's own resolution is ~1e-3 bits.
        for delta in [-0.2, -0.02, 0.02, 0.2] {
            let d = to_d(g_min + delta);
            let v = membership(
                &p,
                &RateTuple::new(r1, r2, l1, f64::INFINITY, d),
                metric,
                &SearchConfig::default(),
            )
            .unwrap();
            assert_eq!(v.achievable, delta > 0.0, "{metric} delta={delta}: {v:?}");
            if v.achievable {
                let w = v.witness.unwrap();
                let worst = oracle_rows(2.0, [1.0, 1.0], [w.r1, w.r2], quad)
                    .into_iter()
                    .filter(|(c, _)| c[3] == 0.0)
                    .map(|(c, rhs)| rhs - dot(c, rates))
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!(worst <= (if quad { 0.5 * d.log2() } else { d }) + 1e-9);
            }
        }
        // The search result is never worse than the grid.
        let best = min_distortion(&p, r1, r2, l1, None, metric, &SearchConfig::default()).unwrap();
        assert!(best.min_d <= to_d(g_min) + 1e-9, "{} vs {}", best.min_d, to_d(g_min));
        assert!(best.min_d >= to_d(g_min - 1e-2));
    }
}

/// Smallest quadratic `D` allowed by the four `K = S` constraints at `a`.
fn unconstrained_quadratic_d(a: [f64; 2], rates: [f64; 2]) -> f64 {
    let g = oracle_rows(2.0, [1.0, 1.0], a, true)
        .into_iter()
        .filter(|(c, _)| c[2] == 0.0 && c[3] == 0.0)
        .map(|(c, rhs)| rhs - dot(c, [rates[0], rates[1], 0.0, 0.0]))
        .fold(f64::NEG_INFINITY, f64::max);
    2f64.powf(2.0 * g)
}

/// Exhaustive grid on `[lo, lo + (n-1) step]^2`; returns `(D, r1, r2)`.
fn grid_min(lo: [f64; 2], step: f64, n: usize, rates: [f64; 2]) -> (f64, f64, f64) {
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let a = [lo[0] + i as f64 * step, lo[1] + j as f64 * step];
            let d = unconstrained_quadratic_d(a, rates);
            if d < best.0 {
                best = (d, a[0], a[1]);
            }
        }
    }
    best
}

#[test]
fn unconstrained_quadratic_minimum_matches_fine_grid() {
    let p = row1();
    let rates = [0.5, 0.5];
    let (coarse, c1, c2) = grid_min([0.0, 0.0], 1e-4, 5001, rates);
    // zoom on the best cell and its neighbours at 2e-7 resolution
    let (fine, _, _) = grid_min([(c1 - 2e-4).max(0.0), (c2 - 2e-4).max(0.0)], 2e-7, 2001, rates);
    assert!(fine <= coarse);
    let row = min_distortion(
        &p,
        0.5,
        0.5,
        f64::INFINITY,
        None,
        Metric::Quadratic,
        &SearchConfig::default(),
    )
    .unwrap();
    assert!((unconstrained_quadratic_d([row.r1, row.r2], rates) - row.min_d).abs() < 1e-12);
    assert!(row.min_d <= fine + 1e-9, "{} vs {}", row.min_d, fine);
    assert!(row.min_d >= fine - 1e-6, "{} vs {}", row.min_d, fine);
    let rd = min_distortion_without_leakage(&p, 0.5, 0.5, Metric::Quadratic, &SearchConfig::default()).unwrap();
    assert!((rd.min_d - row.min_d).abs() < 1e-9);
}

#[test]
fn monotone_anchor_and_single_point_curve() {
    let p = row1();
    let cfg = SearchConfig::default();
    let d: Vec<f64> = [0.1, 0.5, 2.0]
        .iter()
        .map(|&l1| {
            min_distortion(&p, 0.5, 0.5, l1, None, Metric::LogLoss, &cfg)
                .unwrap()
                .min_d
        })
        .collect();
    assert!(d[0] >= d[1] - 1e-9 && d[1] >= d[2] - 1e-9, "{d:?}");
    let single = leakage_curve(&p, 0.5, 0.5, &[0.7], None, Metric::Quadratic, &cfg).unwrap();
    let direct = min_distortion(&p, 0.5, 0.5, 0.7, None, Metric::Quadratic, &cfg).unwrap();
    assert_eq!(single, vec![direct]);
}

#[test]
fn useless_agents_saturate_immediately() {
    let p = GaussianCeoParams::new(2.0, 1e9, 1e9).unwrap();
    let grid = linear_grid(0.0, 3.0, 0.5).unwrap();
    let cfg = SearchConfig::default();
    for (metric, expect) in [(Metric::LogLoss, p.source_entropy()), (Metric::Quadratic, 2.0)] {
        let rep = saturation_threshold(&p, 0.5, 0.5, None, metric, 1e-6, &grid, &cfg).unwrap();
        assert_eq!(rep.l1_star, Some(0.0));
        for row in &rep.curve {
            assert!((row.min_d - expect).abs() < 1e-6, "{metric}: {}", row.min_d);
        }
    }
}

#[test]
fn beta_r_examples() {
    assert!((beta_to_r(1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
    assert!((r_to_beta(1.0, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(beta_to_r(1.0, f64::INFINITY).unwrap(), 0.0);
    assert_eq!(r_to_beta(1.0, 0.0).unwrap(), f64::INFINITY);
    assert!(beta_to_r(1.0, 0.0).is_err() && r_to_beta(1.0, -1.0).is_err());
    let p = row1();
    let h = gaussian_cond_entropy(&p, [true, false], AuxRates::new(0.5, 0.0));
    assert!((h - 0.5 * (2.0 * PI * E).log2()).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_round_trip(log_beta in -6.0f64..6.0, log_sn in -2.0f64..2.0) {
        let (beta, sn) = (10f64.powf(log_beta), 10f64.powf(log_sn));
        let back = r_to_beta(sn, beta_to_r(sn, beta).unwrap()).unwrap();
        prop_assert!(((back - beta) / beta).abs() < 1e-10);
    }

    #[test]
    fn rhs_monotone_in_aux_rates(r1 in 0.0f64..4.0, r2 in 0.0f64..4.0, sx in 0.5f64..6.0, quad in any::<bool>()) {
        let p = GaussianCeoParams::new(sx, 1.0, 0.7).unwrap();
        let metric = if quad { Metric::Quadratic } else { Metric::LogLoss };
        let h = 1e-3;
        let base = all_constraints(&p, AuxRates::new(r1, r2), metric);
        for (k, bumped) in [(0usize, AuxRates::new(r1 + h, r2)), (1, AuxRates::new(r1, r2 + h))] {
            let up = all_constraints(&p, bumped, metric);
            for ((pair, a), b) in SubsetPair::all().iter().zip(base.iter()).zip(up.iter()) {
                let diff = b.rhs - a.rhs;
                if pair.k[k] {
                    prop_assert!(diff > 0.0, "{}", a.label);
                } else if pair.s[k] {
                    prop_assert!(diff.abs() < 1e-15, "{}", a.label);
                } else {
                    // the log-precision term: smaller noise sum means a lower rhs
                    prop_assert!(diff <= 1e-15, "{}", a.label);
                }
            }
        }
    }

    #[test]
    fn conditional_entropy_is_bracketed(r in 0.0f64..20.0, sx in 0.1f64..10.0, sn in 0.1f64..10.0, k in 1usize..=2) {
        let p = GaussianCeoParams::new(sx, sn, sn * 1.5).unwrap();
        let active = if k == 1 { [true, false] } else { [false, true] };
        let h = gaussian_cond_entropy(&p, active, AuxRates::new(r, r));
        prop_assert!(h <= p.source_entropy() + 1e-12);
        prop_assert!(h >= p.entropy_given_observation(k) - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn min_distortion_is_monotone_in_every_rate(
        base in [0.0f64..1.5, 0.0f64..1.5, 0.0f64..1.5, 0.0f64..1.5],
        which in 0usize..4,
        bump in 0.01f64..1.0,
        quad in any::<bool>(),
    ) {
        let p = GaussianCeoParams::new(5.0, 1.0, 1.0).unwrap();
        let metric = if quad { Metric::Quadratic } else { Metric::LogLoss };
        let mut up = base;
        up[which] += bump;
        // a common box keeps both searches over the same domain
        let cfg = SearchConfig { r_max: Some(10.0), ..Default::default() };
        let a = min_distortion(&p, base[0], base[1], base[2], Some(base[3]), metric, &cfg).unwrap();
        let b = min_distortion(&p, up[0], up[1], up[2], Some(up[3]), metric, &cfg).unwrap();
        prop_assert!(b.min_d <= a.min_d + 1e-9, "{:?} -> {:?}: {} vs {}", base, up, a.min_d, b.min_d);
        // dropping the leakage constraints never raises the minimum
        let free = min_distortion_without_leakage(&p, base[0], base[1], metric, &cfg).unwrap();
        prop_assert!(free.min_d <= a.min_d + 1e-9);
    }

    #[test]
    fn gaussian_region_is_up_closed(
        t in [0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, 0.5f64..3.0],
        d in [0.0f64..0.5, 0.0f64..0.5, 0.0f64..0.5, 0.0f64..0.5, 0.0f64..0.5],
    ) {
        let p = row1();
        let cfg = SearchConfig { r_max: Some(8.0), ..Default::default() };
        let lo = RateTuple::new(t[0], t[1], t[2], t[3], t[4]);
        let hi = RateTuple::new(t[0] + d[0], t[1] + d[1], t[2] + d[2], t[3] + d[3], t[4] + d[4]);
        let a = membership(&p, &lo, Metric::LogLoss, &cfg).unwrap();
        let b = membership(&p, &hi, Metric::LogLoss, &cfg).unwrap();
        prop_assert!(!a.achievable || b.achievable);
        prop_assert!(b.max_violation <= a.max_violation + 1e-9);
    }
}
