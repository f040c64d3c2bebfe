//! Test-only oracles, written without the library's tensor code.
#![allow(dead_code)]

use std::collections::HashMap;

use ceo_leakage::{AuxiliarySystem, DiscreteCeoModel};

/// Variable order in a joint outcome: Q X Z Y1 Y2 U1 U2 V1 V2.
const NAMES: [&str; 9] = ["Q", "X", "Z", "Y1", "Y2", "U1", "U2", "V1", "V2"];

pub struct Oracle {
    cells: HashMap<[usize; 9], f64>,
}

impl Oracle {
    /// Direct product of the factorization, one nested loop per variable.
    pub fn new(model: &DiscreteCeoModel, aux: &AuxiliarySystem) -> Self {
        let mut cells = HashMap::new();
        let pq = aux.pq();
        let px = model.px();
        for (q, &a) in pq.iter().enumerate() {
            for (x, &b) in px.iter().enumerate() {
                for (z, &c) in model.pz_given_x()[x].iter().enumerate() {
                    for (y1, &d) in model.py_given_x(1)[x].iter().enumerate() {
                        for (y2, &e) in model.py_given_x(2)[x].iter().enumerate() {
                            for (u1, &f) in aux.pu_given_y_q(1)[q][y1].iter().enumerate() {
                                for (u2, &g) in aux.pu_given_y_q(2)[q][y2].iter().enumerate() {
                                    for (v1, &h) in aux.pv_given_u_q(1)[q][u1].iter().enumerate() {
                                        for (v2, &i) in aux.pv_given_u_q(2)[q][u2].iter().enumerate() {
                                            let p = a * b * c * d * e * f * g * h * i;
                                            if p > 0.0 {
                                                *cells.entry([q, x, z, y1, y2, u1, u2, v1, v2]).or_insert(0.0) += p;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Self { cells }
    }

    fn index(name: &str) -> usize {
        NAMES
            .iter()
            .position(|n| *n == name.trim())
            .unwrap_or_else(|| panic!("oracle: unknown variable {name}"))
    }

    fn indices(list: &str) -> Vec<usize> {
        if list.trim().is_empty() {
            return Vec::new();
        }
        list.split(',').map(Self::index).collect()
    }

    /// Joint entropy in bits of the listed variables.
    pub fn h(&self, vars: &[usize]) -> f64 {
        let mut marg: HashMap<Vec<usize>, f64> = HashMap::new();
        for (k, p) in &self.cells {
            *marg.entry(vars.iter().map(|&i| k[i]).collect()).or_insert(0.0) += p;
        }
        marg.values().filter(|p| **p > 0.0).map(|p| -p * p.log2()).sum()
    }

    fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut v = a.to_vec();
        for i in b {
            if !v.contains(i) {
                v.push(*i);
            }
        }
        v
    }

    /// Evaluates a term written as `H(A|B)` or `I(A;B|C)`, or `xi1`/`xi2`.
    pub fn term(&self, name: &str) -> f64 {
        let expanded = match name {
            "xi1" => "I(V1;U2|Y1,Y2,Q)",
            "xi2" => "I(V2;U1|Y1,Y2,Q)",
            "xi_prime" => "I(V1;V2|Q)",
            other => other,
        };
        let body = &expanded[2..expanded.len() - 1];
        let (main, cond) = body.split_once('|').unwrap_or((body, ""));
        let c = Self::indices(cond);
        if expanded.starts_with("H(") {
            let a = Self::indices(main);
            self.h(&Self::union(&a, &c)) - self.h(&c)
        } else {
            let (a, b) = main.split_once(';').expect("mutual information needs ';'");
            let (a, b) = (Self::indices(a), Self::indices(b));
            self.h(&Self::union(&a, &c)) + self.h(&Self::union(&b, &c))
                - self.h(&Self::union(&Self::union(&a, &b), &c))
                - self.h(&c)
        }
    }
}

/// Binary entropy in bits.
pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}
