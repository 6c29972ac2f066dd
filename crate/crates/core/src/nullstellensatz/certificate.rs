//! gcd certificates: if the gcd of a coefficient family has only small prime
//! factors, every larger prime `p` leaves some coefficient nonzero mod `p`,
//! and Alon's Nullstellensatz then yields a valid ordering in `ℤ_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::extract::{decimal, CoefficientRecord, Extractor};
use super::{Family, NullError, TargetSpec};
use crate::arith::{factorize, gcd_all, is_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjecture {
    Alspach,
    Gadms,
}

impl Conjecture {
    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Alspach => "alspach",
            Conjecture::Gadms => "gadms",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = NullError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alspach" => Ok(Conjecture::Alspach),
            "gadms" | "g-adms" => Ok(Conjecture::Gadms),
            _ => Err(NullError::InvalidTarget(format!("unknown conjecture {s:?}"))),
        }
    }
}

/// Size of the subsets a family at level `k` certifies, if the pairing is meaningful.
pub fn certified_size(conjecture: Conjecture, family: Family, k: usize) -> Option<usize> {
    match (conjecture, family) {
        (Conjecture::Alspach, Family::C) => Some(k),
        (Conjecture::Gadms, Family::E | Family::D) => Some(k + 1),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub j: usize,
    #[serde(with = "decimal")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub conjecture: Conjecture,
    pub k: usize,
    pub family: Family,
    /// Subset size the certificate speaks about.
    pub set_size: usize,
    pub values: Vec<CertifiedValue>,
    #[serde(with = "decimal")]
    pub gcd: BigInt,
    pub gcd_factors: Vec<(u64, u32)>,
    /// Primes above `set_size` that divide every value.
    pub excluded_primes: Vec<u64>,
    pub min_admissible_prime: u64,
}

impl Certificate {
    /// Whether the certificate covers size-`set_size` subsets of `ℤ_p`.
    pub fn admits(&self, p: u64) -> bool {
        is_prime(p) && p as usize > self.set_size && !(&self.gcd % BigInt::from(p)).is_zero()
    }
}

/// Assembles a certificate from already extracted records.
pub fn certificate_from_records(
    conjecture: Conjecture,
    k: usize,
    family: Family,
    records: &[CoefficientRecord],
) -> Result<Certificate, NullError> {
    let set_size = certified_size(conjecture, family, k)
        .ok_or_else(|| NullError::InvalidTarget(format!("family {family} does not certify {conjecture}")))?;
    if records.is_empty() {
        return Err(NullError::InvalidTarget("empty j-range".into()));
    }
    if let Some(r) = records.iter().find(|r| r.target.family != family || r.target.k != k) {
        return Err(NullError::InvalidTarget(format!("record {} does not belong to {family} at k = {k}", r.target)));
    }
    let values: Vec<CertifiedValue> =
        records.iter().map(|r| CertifiedValue { j: r.target.j, value: r.value.clone() }).collect();
    let gcd = gcd_all(values.iter().map(|v| &v.value));
    if gcd.is_zero() {
        return Err(NullError::NoNonzeroCoefficient);
    }
    let gcd_factors = factorize(&gcd).ok_or_else(|| NullError::GcdTooLarge(gcd.clone()))?;
    let excluded_primes =
        gcd_factors.iter().map(|&(p, _)| p).filter(|&p| p as usize > set_size).collect::<Vec<_>>();
    let mut p = set_size as u64 + 1;
    while !is_prime(p) || excluded_primes.contains(&p) {
        p += 1;
    }
    Ok(Certificate {
        conjecture,
        k,
        family,
        set_size,
        values,
        gcd,
        gcd_factors,
        excluded_primes,
        min_admissible_prime: p,
    })
}

/// Extracts the requested coefficients and assembles the certificate.
pub fn certify(
    extractor: &Extractor,
    conjecture: Conjecture,
    k: usize,
    family: Family,
    js: &[usize],
) -> Result<Certificate, NullError> {
    if js.is_empty() {
        return Err(NullError::InvalidTarget("empty j-range".into()));
    }
    certified_size(conjecture, family, k)
        .ok_or_else(|| NullError::InvalidTarget(format!("family {family} does not certify {conjecture}")))?;
    let targets: Vec<TargetSpec> =
        js.iter().map(|&j| TargetSpec::new(family, k, None, j)).collect::<Result<_, _>>()?;
    let records = extractor.extract_all(&targets)?;
    certificate_from_records(conjecture, k, family, &records)
}
