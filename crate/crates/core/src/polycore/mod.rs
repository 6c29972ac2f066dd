//! Sparse multivariate polynomials over ℤ with per-variable degree caps.
//!
//! Truncating by a [`CapProfile`] discards every monomial with
//! `deg_r(m) > caps[r]` for some `r`. The discarded monomials form a monomial
//! ideal, so truncation is a ring homomorphism onto the quotient and any
//! coefficient inside the caps can be computed without ever materialising
//! the full product.
//!
//! Terms are kept in a vector sorted by packed exponent key (lexicographic on
//! exponent vectors), which makes equality, serialization and merging cheap.

mod coeff;
mod linear;
mod monomial;

use std::fmt;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coeff::Coeff;
pub use linear::{LinearForm, StepStats};
pub use monomial::{Monomial, MAX_EXP, MAX_VARS};

use monomial::{check_nvars, exponent, pack, unit, unpack};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("unsupported variable count {nvars} (supported 1..={max})")]
    BadVariableCount { nvars: usize, max: usize },
    #[error("exponent of x{var} exceeds the representable maximum {max}")]
    ExponentOverflow { var: usize, max: u32 },
    #[error("term limit of {limit} live terms exceeded")]
    TermLimitExceeded { limit: usize },
    #[error("invalid coefficient {0:?}")]
    InvalidCoefficient(String),
}

/// Upper bound on the number of live terms an operation may hold.
///
/// Hitting the limit is an error: the workload is too large, the answer is
/// never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermLimit(pub usize);

impl TermLimit {
    pub const UNLIMITED: TermLimit = TermLimit(usize::MAX);

    pub(crate) fn check(self, live: usize) -> Result<(), PolyError> {
        if live > self.0 {
            Err(PolyError::TermLimitExceeded { limit: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for TermLimit {
    fn default() -> Self {
        TermLimit::UNLIMITED
    }
}

/// Per-variable exponent maxima; `None` means unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CapProfile {
    caps: Vec<Option<u32>>,
}

impl CapProfile {
    pub fn unbounded(nvars: usize) -> Self {
        CapProfile { caps: vec![None; nvars] }
    }

    pub fn from_caps(caps: &[u32]) -> Self {
        CapProfile { caps: caps.iter().map(|&c| Some(c)).collect() }
    }

    pub fn new(caps: Vec<Option<u32>>) -> Self {
        CapProfile { caps }
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    /// Cap of the 1-based variable `x_var`.
    pub fn cap(&self, var: usize) -> Option<u32> {
        self.caps[var - 1]
    }

    pub fn caps(&self) -> &[Option<u32>] {
        &self.caps
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.nvars() == self.nvars()
            && self
                .caps
                .iter()
                .enumerate()
                .all(|(r, c)| c.map_or(true, |c| m.exponent(r + 1) <= c))
    }

    fn check_len(&self, nvars: usize) -> Result<(), PolyError> {
        if self.caps.len() != nvars {
            return Err(PolyError::VariableCountMismatch { left: nvars, right: self.caps.len() });
        }
        Ok(())
    }
}

/// One serialized term: exponent vector plus a decimal coefficient string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct PolynomialDoc {
    nvars: usize,
    terms: Vec<TermRecord>,
}

/// A polynomial in `nvars` variables with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolynomialDoc", into = "PolynomialDoc")]
pub struct Polynomial {
    nvars: usize,
    // sorted by key, no zero coefficients
    terms: Vec<(u64, Coeff)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Result<Self, PolyError> {
        check_nvars(nvars)?;
        Ok(Polynomial { nvars, terms: Vec::new() })
    }

    pub fn one(nvars: usize) -> Result<Self, PolyError> {
        Self::constant(nvars, Coeff::ONE)
    }

    pub fn constant(nvars: usize, c: Coeff) -> Result<Self, PolyError> {
        check_nvars(nvars)?;
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        Ok(Polynomial { nvars, terms })
    }

    /// The polynomial `x_i` (1-based).
    pub fn variable(nvars: usize, i: usize) -> Result<Self, PolyError> {
        check_nvars(nvars)?;
        check_index(i, nvars)?;
        Ok(Polynomial { nvars, terms: vec![(unit(nvars, i - 1), Coeff::ONE)] })
    }

    /// `x_a + x_{a+1} + ... + x_b` (1-based, inclusive).
    pub fn linear_sum(nvars: usize, a: usize, b: usize) -> Result<Self, PolyError> {
        LinearForm::interval(nvars, a, b).map(|f| f.to_polynomial())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<Coeff>,
    {
        check_nvars(nvars)?;
        let mut acc: FxHashMap<u64, Coeff> = FxHashMap::default();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::VariableCountMismatch { left: nvars, right: exps.len() });
            }
            acc.entry(pack(&exps)?).or_default().add_assign(&c.into());
        }
        Ok(Self::from_map(nvars, acc))
    }

    pub(crate) fn from_map(nvars: usize, map: FxHashMap<u64, Coeff>) -> Self {
        let mut terms: Vec<(u64, Coeff)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(k, _)| *k);
        Polynomial { nvars, terms }
    }

    /// Caller guarantees sorted unique keys and no zero coefficients.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(u64, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Coeff)> + '_ {
        self.terms.iter().map(move |(k, c)| (Monomial::from_key(*k, self.nvars), c))
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Result<BigInt, PolyError> {
        if m.nvars() != self.nvars {
            return Err(PolyError::VariableCountMismatch { left: self.nvars, right: m.nvars() });
        }
        Ok(self
            .terms
            .binary_search_by_key(&m.key(), |(k, _)| *k)
            .map(|idx| self.terms[idx].1.to_bigint())
            .unwrap_or_default())
    }

    /// Largest total degree of any term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms().map(|(m, _)| m.total_degree()).max()
    }

    /// Degree shared by every term, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms().map(|(m, _)| m.total_degree());
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    c.add_assign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Polynomial::from_sorted(self.nvars, out))
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(k, c)| (*k, c.neg())).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    /// Drops every term whose exponent in `x_var` (1-based) exceeds `cap`.
    pub fn cut(&self, var: usize, cap: u32) -> Result<Polynomial, PolyError> {
        check_index(var, self.nvars)?;
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| exponent(*k, self.nvars, var - 1) <= cap)
            .cloned()
            .collect();
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    /// Applies [`Polynomial::cut`] for every bounded variable of `caps`.
    pub fn cut_all(&self, caps: &CapProfile) -> Result<Polynomial, PolyError> {
        caps.check_len(self.nvars)?;
        let mut out = self.clone();
        for (r, cap) in caps.caps.iter().enumerate() {
            if let Some(c) = cap {
                out = out.cut(r + 1, *c)?;
            }
        }
        Ok(out)
    }

    /// Product in the quotient ring `ℤ[x]/I`, `I = (x_r^{caps[r]+1})`.
    ///
    /// Every pairwise term product is truncated before it is accumulated, so
    /// no over-cap monomial is ever stored.
    pub fn mul_capped(
        &self,
        other: &Polynomial,
        caps: &CapProfile,
        limit: TermLimit,
    ) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        caps.check_len(self.nvars)?;
        let n = self.nvars;
        let bounds: Vec<u32> = caps.caps.iter().map(|c| c.unwrap_or(MAX_EXP).min(MAX_EXP)).collect();
        let unbounded: Vec<bool> = caps.caps.iter().map(|c| c.map_or(true, |c| c > MAX_EXP)).collect();
        let rhs: Vec<(u64, Vec<u32>, &Coeff)> =
            other.terms.iter().map(|(k, c)| (*k, unpack(*k, n), c)).collect();

        let mut acc: FxHashMap<u64, Coeff> = FxHashMap::default();
        for (ka, ca) in &self.terms {
            let ea = unpack(*ka, n);
            'pair: for (kb, eb, cb) in &rhs {
                for r in 0..n {
                    let e = ea[r] + eb[r];
                    if e > bounds[r] {
                        if unbounded[r] {
                            return Err(PolyError::ExponentOverflow { var: r + 1, max: MAX_EXP });
                        }
                        continue 'pair;
                    }
                }
                acc.entry(ka + kb).or_default().add_assign(&ca.mul(cb));
            }
            limit.check(acc.len())?;
        }
        Ok(Polynomial::from_map(n, acc))
    }

    /// Untruncated product.
    pub fn mul(&self, other: &Polynomial, limit: TermLimit) -> Result<Polynomial, PolyError> {
        self.mul_capped(other, &CapProfile::unbounded(self.nvars), limit)
    }

    /// Renames variables: `x_r` of `self` becomes `x_{map[r-1]}` of a
    /// polynomial in `nvars` variables.
    pub fn substitute_variables(&self, nvars: usize, map: &[usize]) -> Result<Polynomial, PolyError> {
        check_nvars(nvars)?;
        if map.len() != self.nvars {
            return Err(PolyError::VariableCountMismatch { left: self.nvars, right: map.len() });
        }
        for &t in map {
            check_index(t, nvars)?;
        }
        let mut acc: FxHashMap<u64, Coeff> = FxHashMap::default();
        for (m, c) in self.terms() {
            let mut exps = vec![0u32; nvars];
            for (r, e) in m.exponents().into_iter().enumerate() {
                exps[map[r] - 1] += e;
            }
            acc.entry(pack(&exps)?).or_default().add_assign(c);
        }
        Ok(Polynomial::from_map(nvars, acc))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(m, c)| TermRecord { exponents: m.exponents(), coefficient: c.to_string() })
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[TermRecord]) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let c: Coeff = r
                .coefficient
                .parse()
                .map_err(|_| PolyError::InvalidCoefficient(r.coefficient.clone()))?;
            terms.push((r.exponents.clone(), c));
        }
        Polynomial::from_terms(nvars, terms)
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }
}

fn check_index(i: usize, nvars: usize) -> Result<(), PolyError> {
    if i == 0 || i > nvars {
        return Err(PolyError::IndexOutOfRange { index: i, nvars });
    }
    Ok(())
}

/// Full product of `factors` with no truncation (the empty product is 1).
///
/// Kept deliberately simple: it is the reference the capped pipeline is
/// checked against.
pub fn expand_product_naive(
    nvars: usize,
    factors: &[Polynomial],
    limit: TermLimit,
) -> Result<Polynomial, PolyError> {
    let mut acc = Polynomial::one(nvars)?;
    for f in factors {
        acc = acc.mul(f, limit)?;
    }
    Ok(acc)
}

impl From<Polynomial> for PolynomialDoc {
    fn from(p: Polynomial) -> Self {
        PolynomialDoc { nvars: p.nvars, terms: p.to_records() }
    }
}

impl TryFrom<PolynomialDoc> for Polynomial {
    type Error = PolyError;

    fn try_from(doc: PolynomialDoc) -> Result<Self, Self::Error> {
        Polynomial::from_records(doc.nvars, &doc.terms)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let m = Monomial::from_key(*k, self.nvars);
            let (neg, abs) = match c.to_bigint() {
                v if v < BigInt::from(0) => (true, -v),
                v => (false, v),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = abs == BigInt::from(1);
            match (*k == 0, is_one) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}
