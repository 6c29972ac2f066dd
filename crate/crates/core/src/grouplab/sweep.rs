//! Exhaustive sweeps over all variant-valid k-subsets of `ℤ_n`.


use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_ordering_within, Cyclic, GroupError, NiceSet, SearchBudget, Variant};
use crate::nullstellensatz::{certify, Certificate, Conjecture, Extractor, Family, NullError};

/// Limits for a sweep: how many subsets may be enumerated and how many search
/// nodes each ordering search may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepBudget {
    pub max_subsets: u64,
    pub search: SearchBudget,
}

impl Default for SweepBudget {
    fn default() -> Self {
        SweepBudget { max_subsets: 5_000_000, search: SearchBudget(10_000_000) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: u64,
    pub k: usize,
    pub variant: Variant,
    /// k-subsets of `ℤ_n \ {0}` enumerated.
    pub subsets_enumerated: u64,
    /// Those that satisfy the variant's niceness condition.
    pub valid_subsets: u64,
    /// Valid subsets with no valid ordering (conjecture-relevant).
    pub failures: Vec<Vec<u64>>,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl SweepReport {
    pub fn counterexamples(&self) -> usize {
        self.failures.len()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All k-subsets of `1..n` in lexicographic order.
pub fn nonzero_subsets(n: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if k == 0 || k as u64 > n - 1 {
        return out;
    }
    let mut cur: Vec<u64> = (1..=k as u64).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - i) as u64 {
                break;
            }
        }
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Checks every variant-valid k-subset of `ℤ_n` for a valid ordering.
pub fn sweep(n: u64, k: usize, variant: Variant, budget: SweepBudget) -> Result<SweepReport, GroupError> {
    let group = Cyclic::new(n)?;
    if k == 0 {
        return Err(GroupError::NotNice("subset size must be positive".into()));
    }
    let total = binomial(n - 1, k as u64);
    if total > budget.max_subsets {
        return Err(GroupError::BudgetExceeded(format!(
            "C({}, {k}) = {total} subsets exceeds the budget of {}",
            n - 1,
            budget.max_subsets
        )));
    }
    let start = crate::clock::Stopwatch::start();
    let subsets = nonzero_subsets(n, k);
    let outcomes: Vec<Option<bool>> = subsets
        .par_iter()
        .map(|s| match NiceSet::new(group, s.clone(), variant) {
            Err(_) => Ok(None),
            Ok(set) => find_ordering_within(&set, budget.search).map(|o| Some(o.is_some())),
        })
        .collect::<Result<_, _>>()?;
    let valid_subsets = outcomes.iter().filter(|o| o.is_some()).count() as u64;
    let failures = subsets
        .into_iter()
        .zip(&outcomes)
        .filter(|(_, o)| **o == Some(false))
        .map(|(s, _)| s)
        .collect();
    Ok(SweepReport {
        n,
        k,
        variant,
        subsets_enumerated: total,
        valid_subsets,
        failures,
        elapsed_ms: start.elapsed_ms(),
    })
}

/// Certificate that speaks about `size`-subsets for `variant`:
/// alspach uses `c_{size,j}`, gadms uses `e_{size-1,j}`, and cmpp rides on the
/// alspach certificate for `size - 1` (drop one element, order the rest, put
/// it last).
pub fn certificate_for_size(ex: &Extractor, variant: Variant, size: usize) -> Result<Certificate, NullError> {
    let (conj, family, k) = match variant {
        Variant::Alspach => (Conjecture::Alspach, Family::C, size),
        Variant::Gadms => (Conjecture::Gadms, Family::E, size.wrapping_sub(1)),
        Variant::Cmpp => (Conjecture::Alspach, Family::C, size.wrapping_sub(1)),
    };
    if !(2..=crate::nullstellensatz::target::MAX_K).contains(&k) {
        return Err(NullError::InvalidTarget(format!("no {variant} certificate for subsets of size {size}")));
    }
    let js: Vec<usize> = (1..=k).collect();
    certify(ex, conj, k, family, &js)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub k: usize,
    pub p: u64,
    pub variant: Variant,
    pub certificate: Certificate,
    /// The certificate covers size-k subsets of `ℤ_p`.
    pub certificate_admits: bool,
    pub sweep: SweepReport,
    /// No contradiction: if the certificate admits `p`, the sweep found no failure.
    pub agree: bool,
}

/// Cross-checks a Nullstellensatz certificate against an exhaustive sweep of `ℤ_p`.
pub fn nullstellensatz_consistency(
    ex: &Extractor,
    k: usize,
    p: u64,
    variant: Variant,
    budget: SweepBudget,
) -> Result<ConsistencyReport, GroupError> {
    if !crate::arith::is_prime(p) {
        return Err(GroupError::InvalidGroup(format!("{p} is not prime")));
    }
    let certificate = certificate_for_size(ex, variant, k)?;
    // a cmpp set of size k is covered once the alspach certificate for k - 1
    // covers ℤ_p; its own size bound is k - 1 < p as well
    let certificate_admits = certificate.admits(p);
    let sweep = sweep(p, k, variant, budget)?;
    let agree = !certificate_admits || sweep.failures.is_empty();
    Ok(ConsistencyReport { k, p, variant, certificate, certificate_admits, sweep, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nullstellensatz::ExtractConfig;

    #[test]
    fn subsets_enumeration() {
        assert_eq!(nonzero_subsets(5, 2).len() as u64, binomial(4, 2));
        assert_eq!(nonzero_subsets(5, 2)[0], vec![1, 2]);
        assert_eq!(nonzero_subsets(5, 2).last().unwrap(), &vec![3, 4]);
        assert_eq!(nonzero_subsets(2, 1), vec![vec![1]]);
        assert!(nonzero_subsets(3, 3).is_empty());
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(20, 5), 15504);
    }

    #[test]
    fn sweep_examples() {
        let r = sweep(10, 3, Variant::Alspach, SweepBudget::default()).unwrap();
        assert_eq!(r.counterexamples(), 0);
        assert_eq!(r.subsets_enumerated, 84);
        let r = sweep(13, 4, Variant::Gadms, SweepBudget::default()).unwrap();
        assert_eq!(r.counterexamples(), 0);
        assert_eq!(r.valid_subsets, binomial(12, 4));
        let r = sweep(2, 1, Variant::Alspach, SweepBudget::default()).unwrap();
        assert_eq!((r.valid_subsets, r.counterexamples()), (1, 0));
        let tight = SweepBudget { max_subsets: 10, ..Default::default() };
        assert!(matches!(sweep(13, 4, Variant::Gadms, tight), Err(GroupError::BudgetExceeded(_))));
    }

    #[test]
    fn consistency_examples() {
        let ex = Extractor::new(ExtractConfig::default());
        for (k, p, v) in [(4, 7, Variant::Gadms), (3, 5, Variant::Alspach)] {
            let r = nullstellensatz_consistency(&ex, k, p, v, SweepBudget::default()).unwrap();
            assert!(r.certificate_admits && r.agree && r.sweep.failures.is_empty(), "{k} {p} {v}");
        }
        assert!(nullstellensatz_consistency(&ex, 3, 9, Variant::Gadms, SweepBudget::default()).is_err());
    }
}
