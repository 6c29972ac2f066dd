use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NullError;
use crate::polycore::{CapProfile, Monomial, MAX_VARS};

/// Which coefficient family a target belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `a^{(k)}_{i,j}`: coefficient of `x_i^{k-1} ∏_{r≠i,j} x_r^k` in `F_k`.
    A,
    /// `c_{k,j}`: coefficient of `x_j^{k-2} ∏_{r≠j} x_r^{k-1}` in `F_k`.
    C,
    /// `e_{k,j}`: coefficient of `∏_{r≠j} x_r^k` in `g_k`.
    E,
    /// `d_{k+1,j}`: coefficient of `∏_{r≠j} x_r^k` in `f_{k+1}`.
    D,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::C => "c",
            Family::E => "e",
            Family::D => "d",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = NullError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "c" => Ok(Family::C),
            "e" => Ok(Family::E),
            "d" => Ok(Family::D),
            _ => Err(NullError::InvalidTarget(format!("unknown family {s:?}"))),
        }
    }
}

/// A single coefficient to extract. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TargetSpec {
    pub family: Family,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub j: usize,
}

/// Largest `k` the packed monomial layout supports (family d uses `k + 1` variables).
pub const MAX_K: usize = MAX_VARS;

impl TargetSpec {
    pub fn a(k: usize, i: usize, j: usize) -> Result<Self, NullError> {
        TargetSpec { family: Family::A, k, i: Some(i), j }.validated()
    }

    pub fn c(k: usize, j: usize) -> Result<Self, NullError> {
        TargetSpec { family: Family::C, k, i: None, j }.validated()
    }

    pub fn e(k: usize, j: usize) -> Result<Self, NullError> {
        TargetSpec { family: Family::E, k, i: None, j }.validated()
    }

    pub fn d(k: usize, j: usize) -> Result<Self, NullError> {
        TargetSpec { family: Family::D, k, i: None, j }.validated()
    }

    pub fn new(family: Family, k: usize, i: Option<usize>, j: usize) -> Result<Self, NullError> {
        TargetSpec { family, k, i, j }.validated()
    }

    pub fn validated(self) -> Result<Self, NullError> {
        let bad = |msg: String| Err(NullError::InvalidTarget(msg));
        let k = self.k;
        if k < 2 {
            return bad(format!("k must be at least 2, got {k}"));
        }
        let max_k = if self.family == Family::D { MAX_K - 1 } else { MAX_K };
        if k > max_k {
            return bad(format!("k = {k} exceeds the supported maximum {max_k} for family {}", self.family));
        }
        let j_max = if self.family == Family::D { k + 1 } else { k };
        if self.j == 0 || self.j > j_max {
            return bad(format!("j = {} out of range 1..={j_max}", self.j));
        }
        match (self.family, self.i) {
            (Family::A, None) => bad("family a requires an index i".into()),
            (Family::A, Some(i)) if i == 0 || i > k || i == self.j => {
                bad(format!("i = {i} must lie in 1..={k} and differ from j = {}", self.j))
            }
            (Family::A, Some(_)) => Ok(self),
            (_, Some(_)) => bad(format!("family {} takes no index i", self.family)),
            (_, None) => Ok(self),
        }
    }

    /// Number of variables of the polynomial the target lives in.
    pub fn nvars(&self) -> usize {
        match self.family {
            Family::D => self.k + 1,
            _ => self.k,
        }
    }

    pub fn exponents(&self) -> Vec<u32> {
        let k = self.k as u32;
        let j = self.j - 1;
        let mut exps = match self.family {
            Family::A | Family::E | Family::D => vec![k; self.nvars()],
            Family::C => vec![k - 1; self.nvars()],
        };
        match self.family {
            Family::A => {
                exps[j] = 0;
                exps[self.i.unwrap() - 1] = k - 1;
            }
            Family::C => exps[j] = k - 2,
            Family::E | Family::D => exps[j] = 0,
        }
        exps
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::new(&self.exponents()).expect("validated target fits the packed layout")
    }

    /// Total degree of the target monomial.
    pub fn degree(&self) -> u32 {
        self.exponents().iter().sum()
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.i) {
            (Family::A, Some(i)) => write!(f, "a^({})_({},{})", self.k, i, self.j),
            (Family::D, _) => write!(f, "d_({},{})", self.k + 1, self.j),
            (fam, _) => write!(f, "{}_({},{})", fam, self.k, self.j),
        }
    }
}

/// The loosest cap profile that keeps every divisor of the target monomial.
///
/// For families a and c this is the profile the truncated `F_k` recursion
/// runs under; for e and d it is the profile of `g_k` and `f_{k+1}`.
pub fn cap_profile_for(target: &TargetSpec) -> CapProfile {
    CapProfile::from_caps(&target.exponents())
}
