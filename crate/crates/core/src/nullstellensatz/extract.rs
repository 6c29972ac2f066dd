//! Coefficient extraction with memoisation and an optional persistent store.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::families::{f_big_factors, f_small_factors, g_factors};
use super::pipeline::target_coefficient;
use super::{Family, NullError, TargetSpec};
use crate::polycore::{expand_product_naive, LinearForm, Polynomial, TermLimit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CappedPipeline,
    NaiveOracle,
    Relation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::CappedPipeline => "capped-pipeline",
            Method::NaiveOracle => "naive-oracle",
            Method::Relation => "relation",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = NullError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "capped-pipeline" => Ok(Method::CappedPipeline),
            "naive-oracle" => Ok(Method::NaiveOracle),
            "relation" => Ok(Method::Relation),
            _ => Err(NullError::InvalidTarget(format!("unknown method {s:?}"))),
        }
    }
}

/// Run metadata. Not part of a record's identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub wall_ms: f64,
    pub peak_terms: usize,
}

/// One extracted coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    #[serde(flatten)]
    pub target: TargetSpec,
    #[serde(with = "decimal")]
    pub value: BigInt,
    pub method: Method,
    #[serde(default)]
    pub meta: RunMeta,
}

/// Serializes a [`BigInt`] as a decimal string.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("invalid decimal integer {s:?}")))
    }
}

/// Persistent lookup consulted before any computation.
pub trait CoefficientStore: Sync {
    fn lookup(&self, target: &TargetSpec) -> Option<CoefficientRecord>;
    fn store(&self, record: &CoefficientRecord) -> Result<(), String>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractConfig {
    /// Largest `k` for which `g_k` / `F_k` may be expanded naively.
    pub naive_g_max_k: usize,
    /// Largest `k` for which `f_{k+1}` may be expanded naively.
    pub naive_f_max_k: usize,
    pub limit: TermLimit,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig { naive_g_max_k: 6, naive_f_max_k: 5, limit: TermLimit::UNLIMITED }
    }
}

/// Extracts coefficients, memoising every result.
///
/// Records are keyed by target; a store hit is returned as-is. Sub-results
/// computed on the way (the `a` entries behind an `e` value) are memoised and
/// stored too.
pub struct Extractor<'s> {
    config: ExtractConfig,
    store: Option<&'s dyn CoefficientStore>,
    memo: Mutex<HashMap<TargetSpec, CoefficientRecord>>,
}

impl<'s> Extractor<'s> {
    pub fn new(config: ExtractConfig) -> Self {
        Extractor { config, store: None, memo: Mutex::new(HashMap::new()) }
    }

    pub fn with_store(config: ExtractConfig, store: &'s dyn CoefficientStore) -> Self {
        Extractor { config, store: Some(store), memo: Mutex::new(HashMap::new()) }
    }

    pub fn config(&self) -> &ExtractConfig {
        &self.config
    }

    /// Extracts with the default method for the family:
    /// a, c and e use the capped pipeline (e as the sum of its a entries);
    /// d is expanded naively when small, otherwise derived from `e`
    /// (`j ≥ 2`) or run through the capped pipeline on `f_{k+1}` (`j = 1`).
    pub fn extract(&self, target: &TargetSpec) -> Result<CoefficientRecord, NullError> {
        let target = target.validated()?;
        if let Some(hit) = self.cached(&target) {
            return Ok(hit);
        }
        let method = match target.family {
            Family::A | Family::C | Family::E => Method::CappedPipeline,
            Family::D if target.k <= self.config.naive_f_max_k => Method::NaiveOracle,
            Family::D if target.j >= 2 => Method::Relation,
            Family::D => Method::CappedPipeline,
        };
        let record = self.compute(&target, method)?;
        self.remember(&record)?;
        Ok(record)
    }

    /// Extracts with an explicit method, bypassing memo and store.
    pub fn extract_with(&self, target: &TargetSpec, method: Method) -> Result<CoefficientRecord, NullError> {
        let target = target.validated()?;
        self.compute(&target, method)
    }

    /// Extracts many targets on the current worker pool; results come back in
    /// input order.
    pub fn extract_all(&self, targets: &[TargetSpec]) -> Result<Vec<CoefficientRecord>, NullError> {
        targets.par_iter().map(|t| self.extract(t)).collect()
    }

    fn cached(&self, target: &TargetSpec) -> Option<CoefficientRecord> {
        if let Some(r) = self.memo.lock().unwrap().get(target) {
            return Some(r.clone());
        }
        let hit = self.store.and_then(|s| s.lookup(target))?;
        self.memo.lock().unwrap().insert(*target, hit.clone());
        Some(hit)
    }

    fn remember(&self, record: &CoefficientRecord) -> Result<(), NullError> {
        let mut memo = self.memo.lock().unwrap();
        if let Some(prev) = memo.get(&record.target) {
            if prev.value != record.value {
                return Err(NullError::Inconsistent {
                    target: record.target,
                    first: prev.value.clone(),
                    second: record.value.clone(),
                });
            }
            return Ok(());
        }
        memo.insert(record.target, record.clone());
        drop(memo);
        if let Some(store) = self.store {
            store.store(record).map_err(NullError::Store)?;
        }
        Ok(())
    }

    fn compute(&self, target: &TargetSpec, method: Method) -> Result<CoefficientRecord, NullError> {
        let start = crate::clock::Stopwatch::start();
        let (value, peak_terms) = match method {
            Method::CappedPipeline => self.pipeline_value(target)?,
            Method::NaiveOracle => self.naive_value(target)?,
            Method::Relation => self.relation_value(target)?,
        };
        let meta = RunMeta { wall_ms: start.elapsed_ms(), peak_terms };
        Ok(CoefficientRecord { target: *target, value, method, meta })
    }

    fn pipeline_value(&self, target: &TargetSpec) -> Result<(BigInt, usize), NullError> {
        let limit = self.config.limit;
        match target.family {
            Family::A | Family::C => {
                let r = target_coefficient(&f_big_factors(target.k)?, &target.monomial(), limit)?;
                Ok((r.value, r.peak_terms))
            }
            Family::E => {
                // e_{k,j} = Σ_{i≠j} a^{(k)}_{i,j}, one independent job per i
                let parts: Vec<TargetSpec> = (1..=target.k)
                    .filter(|&i| i != target.j)
                    .map(|i| TargetSpec::a(target.k, i, target.j))
                    .collect::<Result<_, _>>()?;
                let records = self.extract_all(&parts)?;
                let value = records.iter().map(|r| &r.value).sum();
                let peak = records.iter().map(|r| r.meta.peak_terms).max().unwrap_or(0);
                Ok((value, peak))
            }
            Family::D => {
                let r = target_coefficient(&f_small_factors(target.k)?, &target.monomial(), limit)?;
                Ok((r.value, r.peak_terms))
            }
        }
    }

    fn naive_value(&self, target: &TargetSpec) -> Result<(BigInt, usize), NullError> {
        let (factors, bound) = match target.family {
            Family::A | Family::C => (f_big_factors(target.k)?, self.config.naive_g_max_k),
            Family::E => (g_factors(target.k)?, self.config.naive_g_max_k),
            Family::D => (f_small_factors(target.k)?, self.config.naive_f_max_k),
        };
        if target.k > bound {
            return Err(NullError::NaiveTooLarge { target: *target, bound });
        }
        let polys: Vec<Polynomial> = factors.iter().map(LinearForm::to_polynomial).collect();
        let full = expand_product_naive(target.nvars(), &polys, self.config.limit)?;
        Ok((full.coefficient_of(&target.monomial())?, full.len()))
    }

    fn relation_value(&self, target: &TargetSpec) -> Result<(BigInt, usize), NullError> {
        // d_{k+1,j+1} = (-1)^k e_{k,j}
        if target.family != Family::D || target.j < 2 {
            return Err(NullError::NoRelation(*target));
        }
        let e = self.extract(&TargetSpec::e(target.k, target.j - 1)?)?;
        let sign = if target.k % 2 == 0 { 1 } else { -1 };
        Ok((e.value * sign, e.meta.peak_terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(ex: &Extractor, t: TargetSpec) -> i64 {
        i64::try_from(ex.extract(&t).unwrap().value).unwrap()
    }

    #[test]
    fn small_values_by_hand() {
        let ex = Extractor::new(ExtractConfig::default());
        assert_eq!(value(&ex, TargetSpec::e(2, 1).unwrap()), 1);
        assert_eq!(value(&ex, TargetSpec::e(2, 2).unwrap()), -1);
        assert_eq!(value(&ex, TargetSpec::e(3, 2).unwrap()), 0);
        assert_eq!(value(&ex, TargetSpec::c(3, 1).unwrap()), -1);
        assert_eq!(value(&ex, TargetSpec::d(2, 1).unwrap()), 0);
        assert_eq!(value(&ex, TargetSpec::d(2, 2).unwrap()), 1);
    }

    #[test]
    fn table_one_entries() {
        let ex = Extractor::new(ExtractConfig::default());
        assert_eq!(value(&ex, TargetSpec::a(6, 2, 1).unwrap()), -28);
        assert_eq!(value(&ex, TargetSpec::a(6, 4, 2).unwrap()), -40);
        assert_eq!(value(&ex, TargetSpec::e(6, 3).unwrap()), -20);
    }

    #[test]
    fn d_methods_agree_beyond_naive_bound() {
        let cfg = ExtractConfig { naive_f_max_k: 3, ..Default::default() };
        let ex = Extractor::new(cfg);
        for j in 1..=5 {
            let t = TargetSpec::d(4, j).unwrap();
            let rec = ex.extract(&t).unwrap();
            let want = if j == 1 { Method::CappedPipeline } else { Method::Relation };
            assert_eq!(rec.method, want);
            assert_eq!(rec.value, Extractor::new(ExtractConfig::default()).extract_with(&t, Method::NaiveOracle).unwrap().value);
        }
    }

    #[test]
    fn errors() {
        let ex = Extractor::new(ExtractConfig { naive_g_max_k: 4, ..Default::default() });
        let t = TargetSpec::e(5, 1).unwrap();
        assert!(matches!(ex.extract_with(&t, Method::NaiveOracle), Err(NullError::NaiveTooLarge { .. })));
        assert!(matches!(ex.extract_with(&t, Method::Relation), Err(NullError::NoRelation(_))));
        let bad = TargetSpec { family: Family::A, k: 4, i: Some(2), j: 2 };
        assert!(matches!(ex.extract(&bad), Err(NullError::InvalidTarget(_))));
        let tight = Extractor::new(ExtractConfig { limit: TermLimit(2), ..Default::default() });
        assert!(matches!(tight.extract(&TargetSpec::c(5, 1).unwrap()), Err(NullError::Poly(_))));
    }

    #[test]
    fn record_serialization() {
        let rec = CoefficientRecord {
            target: TargetSpec::a(11, 2, 1).unwrap(),
            value: "18128730243333160".parse().unwrap(),
            method: Method::CappedPipeline,
            meta: RunMeta::default(),
        };
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.starts_with(r#"{"family":"a","k":11,"i":2,"j":1,"value":"18128730243333160","method":"capped-pipeline""#));
        let back: CoefficientRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        let e: CoefficientRecord =
            serde_json::from_str(r#"{"family":"e","k":3,"j":2,"value":"0","method":"naive-oracle"}"#).unwrap();
        assert_eq!(e.target, TargetSpec::e(3, 2).unwrap());
    }
}
