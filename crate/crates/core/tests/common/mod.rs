//! An independent reference: polynomials built straight from their product
//! definitions and expanded in full, with a separate monomial layout
//! (8 bits per variable) and checked `i128` coefficients.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;

/// `Σ c_v x_v` with 1-based variable indices.
pub type Linear = Vec<(usize, i64)>;

fn interval(a: usize, b: usize) -> Linear {
    (a..=b).map(|v| (v, 1)).collect()
}

fn diff(hi: usize, lo: usize) -> Linear {
    vec![(hi, 1), (lo, -1)]
}

/// `g_k(x_{s+1}, ..., x_{s+k})`: over all pairs `a < b`, the factors
/// `(x_b - x_a)` and `(x_a + ... + x_b)`.
pub fn g_factors_at(k: usize, s: usize) -> Vec<Linear> {
    let mut out = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            out.push(diff(b + s, a + s));
            out.push(interval(a + s, b + s));
        }
    }
    out
}

pub fn g_factors(k: usize) -> Vec<Linear> {
    g_factors_at(k, 0)
}

/// `F_k = g_k / (x_1 + ... + x_k)`.
pub fn big_f_factors(k: usize) -> Vec<Linear> {
    let full = interval(1, k);
    let mut out = g_factors(k);
    let pos = out.iter().position(|f| *f == full).unwrap();
    out.remove(pos);
    out
}

/// `f_{k+1} = g_k(x_2, ..., x_{k+1}) ∏_{j=2}^{k+1} (x_j - x_1)`.
pub fn small_f_factors(k: usize) -> Vec<Linear> {
    let mut out = g_factors_at(k, 1);
    out.extend((2..=k + 1).map(|j| diff(j, 1)));
    out
}

pub struct Expansion {
    nvars: usize,
    terms: HashMap<u64, i128>,
}

fn key(exps: &[u32]) -> u64 {
    exps.iter().fold(0u64, |acc, &e| {
        assert!(e < 256);
        (acc << 8) | e as u64
    })
}

impl Expansion {
    pub fn product(nvars: usize, factors: &[Linear]) -> Self {
        assert!(nvars <= 8);
        let shift = |v: usize| 8 * (nvars - v) as u32;
        let mut terms: HashMap<u64, i128> = HashMap::from([(0, 1)]);
        for f in factors {
            let mut next: HashMap<u64, i128> = HashMap::with_capacity(terms.len() * 2);
            for (&m, &c) in &terms {
                for &(v, a) in f {
                    let e = next.entry(m + (1u64 << shift(v))).or_insert(0);
                    *e = e.checked_add(c.checked_mul(a as i128).unwrap()).unwrap();
                }
            }
            next.retain(|_, c| *c != 0);
            terms = next;
        }
        Expansion { nvars, terms }
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        assert_eq!(exps.len(), self.nvars);
        BigInt::from(self.terms.get(&key(exps)).copied().unwrap_or(0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }
}

/// Target exponent vectors written out from the monomial definitions.
pub fn a_exps(k: usize, i: usize, j: usize) -> Vec<u32> {
    (1..=k).map(|r| if r == j { 0 } else if r == i { k as u32 - 1 } else { k as u32 }).collect()
}

pub fn c_exps(k: usize, j: usize) -> Vec<u32> {
    (1..=k).map(|r| if r == j { k as u32 - 2 } else { k as u32 - 1 }).collect()
}

pub fn e_exps(k: usize, j: usize) -> Vec<u32> {
    (1..=k).map(|r| if r == j { 0 } else { k as u32 }).collect()
}

/// `d_{k+1,j}` in `f_{k+1}`.
pub fn d_exps(k: usize, j: usize) -> Vec<u32> {
    (1..=k + 1).map(|r| if r == j { 0 } else { k as u32 }).collect()
}
