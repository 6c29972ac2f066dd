//! Identities between the coefficient families, checked numerically.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::extract::{decimal, Extractor, Method};
use super::{NullError, TargetSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRow {
    pub j: usize,
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    #[serde(with = "decimal")]
    pub rhs: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub k: usize,
    pub rows: Vec<RelationRow>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

fn report(relation: &str, k: usize, rows: Vec<(usize, BigInt, BigInt)>) -> RelationReport {
    RelationReport {
        relation: relation.to_string(),
        k,
        rows: rows.into_iter().map(|(j, lhs, rhs)| RelationRow { j, holds: lhs == rhs, lhs, rhs }).collect(),
    }
}

/// `e_{k,j} = (-1)^{⌊(k-1)/2⌋} c_{k,j}` for every `j`. Observed for small
/// `k`, not known in general.
pub fn sign_relation_check(ex: &Extractor, k: usize) -> Result<RelationReport, NullError> {
    let sign: i64 = if ((k - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let mut rows = Vec::with_capacity(k);
    for j in 1..=k {
        let e = ex.extract(&TargetSpec::e(k, j)?)?.value;
        let c = ex.extract(&TargetSpec::c(k, j)?)?.value;
        rows.push((j, e, c * sign));
    }
    Ok(report("e = (-1)^floor((k-1)/2) c", k, rows))
}

/// `d_{k+1,j+1} = (-1)^k e_{k,j}` with `d` taken from `method` (the naive
/// expansion of `f_{k+1}` by default, never the relation itself).
pub fn d_relation_check(ex: &Extractor, k: usize, method: Method) -> Result<RelationReport, NullError> {
    if method == Method::Relation {
        return Err(NullError::InvalidTarget("checking the d relation with itself".into()));
    }
    let sign: i64 = if k % 2 == 0 { 1 } else { -1 };
    let mut rows = Vec::with_capacity(k);
    for j in 1..=k {
        let d = ex.extract_with(&TargetSpec::d(k, j + 1)?, method)?.value;
        let e = ex.extract(&TargetSpec::e(k, j)?)?.value;
        rows.push((j, d, e * sign));
    }
    Ok(report("d_(k+1,j+1) = (-1)^k e_(k,j)", k, rows))
}

/// `Σ_{i≠j} a^{(k)}_{i,j} = e_{k,j}` with `e` from the naive expansion of `g_k`.
pub fn row_sum_check(ex: &Extractor, k: usize, e_method: Method) -> Result<RelationReport, NullError> {
    let mut rows = Vec::with_capacity(k);
    for j in 1..=k {
        let mut sum = BigInt::default();
        for i in (1..=k).filter(|&i| i != j) {
            sum += ex.extract(&TargetSpec::a(k, i, j)?)?.value;
        }
        let e = ex.extract_with(&TargetSpec::e(k, j)?, e_method)?.value;
        rows.push((j, sum, e));
    }
    Ok(report("sum_i a_(i,j) = e_(k,j)", k, rows))
}

/// The `a^{(k)}` matrix with its `e` column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ATable {
    pub k: usize,
    /// `a[j-1][i-1]` is `a^{(k)}_{i,j}`; the diagonal is `None`.
    pub a: Vec<Vec<Option<BigInt>>>,
    pub e: Vec<BigInt>,
}

impl ATable {
    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.a[j - 1][i - 1].as_ref()
    }
}

pub fn a_table(ex: &Extractor, k: usize) -> Result<ATable, NullError> {
    let targets: Vec<TargetSpec> = (1..=k)
        .flat_map(|j| (1..=k).filter(move |&i| i != j).map(move |i| (i, j)))
        .map(|(i, j)| TargetSpec::a(k, i, j))
        .collect::<Result<_, _>>()?;
    let records = ex.extract_all(&targets)?;
    let mut a = vec![vec![None; k]; k];
    for r in records {
        a[r.target.j - 1][r.target.i.unwrap() - 1] = Some(r.value);
    }
    let e_targets: Vec<TargetSpec> = (1..=k).map(|j| TargetSpec::e(k, j)).collect::<Result<_, _>>()?;
    let e = ex.extract_all(&e_targets)?.into_iter().map(|r| r.value).collect();
    Ok(ATable { k, a, e })
}

/// Exploratory: the patterns visible in the `k = 6` table. Reported, never assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub k: usize,
    /// `a_{i,j} = -a_{j,i}` for all `i ≠ j`.
    pub antisymmetric: bool,
    /// `a_{i,j} = a_{i+1,j+1}` wherever both are defined.
    pub shift_invariant: bool,
}

pub fn symmetry_report(table: &ATable) -> SymmetryReport {
    let k = table.k;
    let mut antisymmetric = true;
    let mut shift_invariant = true;
    for i in 1..=k {
        for j in (1..=k).filter(|&j| j != i) {
            let v = table.get(i, j).unwrap();
            if *v != -table.get(j, i).unwrap() {
                antisymmetric = false;
            }
            if i < k && j < k && table.get(i + 1, j + 1).unwrap() != v {
                shift_invariant = false;
            }
        }
    }
    SymmetryReport { k, antisymmetric, shift_invariant }
}
