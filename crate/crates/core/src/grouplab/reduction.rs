//! Constructive transfer of orderings: a nice set in `ℤ^m` is embedded in `ℤ`
//! by a base-`M` expansion, projected to `ℤ_p`, ordered there, and the
//! ordering is lifted back through both maps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{
    find_ordering_within, upsilon, verify_for_set, AbelianGroup, Cyclic, Free, GroupError, Integers, NiceSet,
    Ordering, SearchBudget, Variant,
};
use crate::arith::next_prime_after;

/// `φ(x_1, ..., x_m) = Σ x_i M^{i-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rank: usize,
    /// `max_{z ∈ Υ(A)} max_j m·|z_j|`.
    pub bound: i64,
    pub base: i64,
}

impl Embedding {
    pub fn apply(&self, z: &[i64]) -> Result<i64, GroupError> {
        let overflow = || GroupError::Overflow(format!("φ({z:?}) with base {}", self.base));
        let mut acc: i64 = 0;
        for &x in z.iter().rev() {
            acc = acc.checked_mul(self.base).and_then(|a| a.checked_add(x)).ok_or_else(overflow)?;
        }
        Ok(acc)
    }
}

fn check_kernel<G, H, F>(set: &NiceSet<G>, target: &H, phi: F) -> Result<(), GroupError>
where
    G: AbelianGroup,
    H: AbelianGroup,
    F: Fn(&G::Elem) -> Result<H::Elem, GroupError>,
{
    let zero = target.zero();
    for z in upsilon(set) {
        if phi(&z)? == zero {
            return Err(GroupError::KernelMeetsUpsilon(format!("{z:?} maps to zero in {}", target.spec())));
        }
    }
    Ok(())
}

/// Embeds a nice subset of `ℤ^m` in `ℤ` with the smallest base
/// `M = bound + 1`; the kernel is checked against `Υ(A)` explicitly.
pub fn embed_to_z(set: &NiceSet<Free>) -> Result<(Embedding, NiceSet<Integers>), GroupError> {
    let rank = set.group().rank();
    let mut bound: i64 = 0;
    for z in upsilon(set) {
        for x in z {
            let b = (rank as i64)
                .checked_mul(x.checked_abs().ok_or_else(|| GroupError::Overflow(format!("|{x}|")))?)
                .ok_or_else(|| GroupError::Overflow(format!("{rank}·|{x}|")))?;
            bound = bound.max(b);
        }
    }
    let base = bound.checked_add(1).ok_or_else(|| GroupError::Overflow("embedding base".into()))?;
    let emb = Embedding { rank, bound, base };
    check_kernel(set, &Integers, |z| emb.apply(z))?;
    let images: Vec<i64> = set.elements().iter().map(|z| emb.apply(z)).collect::<Result<_, _>>()?;
    images
        .iter()
        .try_fold(0i64, |acc, x| acc.checked_add(x.abs()))
        .ok_or_else(|| GroupError::Overflow("partial sums of φ(A)".into()))?;
    let embedded = NiceSet::new(Integers, images, set.variant())?;
    Ok((emb, embedded))
}

/// Projects a nice subset of `ℤ` to `ℤ_p` for the smallest prime
/// `p > max(max_{z ∈ Υ(A)} |z|, |A|)`.
pub fn reduce_mod_prime(set: &NiceSet<Integers>) -> Result<(u64, NiceSet<Cyclic>), GroupError> {
    let max_abs = upsilon(set).iter().map(|z| z.unsigned_abs()).max().unwrap_or(0);
    let p = next_prime_after(max_abs.max(set.len() as u64));
    let zp = Cyclic::new(p)?;
    check_kernel(set, &zp, |z| Ok(zp.reduce(*z)))?;
    let projected = NiceSet::new(zp, set.elements().iter().map(|&z| zp.reduce(z)).collect(), set.variant())?;
    Ok((p, projected))
}

/// Pulls a valid ordering of `φ(A)` back to `A` along the fibers of `φ`,
/// keeping the permutation. `φ` must be a homomorphism whose kernel misses
/// `Υ(A)`; that is checked first, and the lift is re-verified.
pub fn lift_ordering<G, H, F>(
    set: &NiceSet<G>,
    target: &H,
    image: &Ordering<H>,
    phi: F,
) -> Result<Ordering<G>, GroupError>
where
    G: AbelianGroup,
    H: AbelianGroup,
    F: Fn(&G::Elem) -> Result<H::Elem, GroupError>,
{
    check_kernel(set, target, &phi)?;
    let mut fiber: HashMap<H::Elem, G::Elem> = HashMap::with_capacity(set.len());
    for x in set.elements() {
        if let Some(y) = fiber.insert(phi(x)?, x.clone()) {
            return Err(GroupError::KernelMeetsUpsilon(format!("{x:?} and {y:?} share an image")));
        }
    }
    if image.len() != set.len() {
        return Err(GroupError::NotNice("image ordering has the wrong length".into()));
    }
    let entries: Vec<G::Elem> = image
        .entries
        .iter()
        .map(|y| fiber.remove(y).ok_or_else(|| GroupError::NotNice(format!("{y:?} is not in φ(A) once"))))
        .collect::<Result<_, _>>()?;
    let lifted = Ordering::new(set.group(), entries);
    assert!(verify_for_set(set, &lifted), "lifted ordering is invalid");
    Ok(lifted)
}

/// Every level of an `order_in_free_group` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub variant: Variant,
    pub rank: usize,
    pub source: Vec<Vec<i64>>,
    /// For cmpp sets: the element set aside before reducing and appended last.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub removed: Option<Vec<i64>>,
    pub embedding: Embedding,
    pub embedded: Vec<i64>,
    pub prime: u64,
    pub projected: Vec<u64>,
    pub projected_ordering: Ordering<Cyclic>,
    pub embedded_ordering: Ordering<Integers>,
    pub lifted_ordering: Ordering<Free>,
    /// The ordering of `source`.
    pub ordering: Ordering<Free>,
}

struct Chain {
    embedding: Embedding,
    embedded: NiceSet<Integers>,
    prime: u64,
    projected: NiceSet<Cyclic>,
    projected_ordering: Ordering<Cyclic>,
    embedded_ordering: Ordering<Integers>,
    lifted_ordering: Ordering<Free>,
}

fn run_chain(set: &NiceSet<Free>, budget: SearchBudget) -> Result<Chain, GroupError> {
    let (embedding, embedded) = embed_to_z(set)?;
    let (prime, projected) = reduce_mod_prime(&embedded)?;
    let projected_ordering = find_ordering_within(&projected, budget)?
        .ok_or_else(|| GroupError::NoOrdering(format!("{:?} in ℤ_{prime}", projected.elements())))?;
    let zp = *projected.group();
    let embedded_ordering = lift_ordering(&embedded, &zp, &projected_ordering, |z| Ok(zp.reduce(*z)))?;
    let lifted_ordering = lift_ordering(set, &Integers, &embedded_ordering, |z| embedding.apply(z))?;
    Ok(Chain { embedding, embedded, prime, projected, projected_ordering, embedded_ordering, lifted_ordering })
}

/// Orders a nice subset of `ℤ^m` through `ℤ` and `ℤ_p`. A cmpp set has
/// `Σ A = 0 ∈ Υ(A)`, so no map can avoid it; one element is set aside, the
/// rest is reduced as an alspach set, and the element goes last.
pub fn order_in_free_group(set: &NiceSet<Free>, budget: SearchBudget) -> Result<ReductionTrace, GroupError> {
    let (chain, removed, ordering) = if set.variant() == Variant::Cmpp {
        let (ordering, removed, chain) =
            cmpp_reduce_with(set, |rest| run_chain(rest, budget).map(|c| Some((c.lifted_ordering.clone(), c))))?;
        (chain, Some(removed), ordering)
    } else {
        let chain = run_chain(set, budget)?;
        let ordering = chain.lifted_ordering.clone();
        (chain, None, ordering)
    };
    assert!(verify_for_set(set, &ordering));
    Ok(ReductionTrace {
        variant: set.variant(),
        rank: set.group().rank(),
        source: set.elements().to_vec(),
        removed,
        embedding: chain.embedding,
        embedded: chain.embedded.elements().to_vec(),
        prime: chain.prime,
        projected: chain.projected.elements().to_vec(),
        projected_ordering: chain.projected_ordering,
        embedded_ordering: chain.embedded_ordering,
        lifted_ordering: chain.lifted_ordering,
        ordering,
    })
}

fn cmpp_reduce_with<G, T, F>(set: &NiceSet<G>, mut order_rest: F) -> Result<(Ordering<G>, G::Elem, T), GroupError>
where
    G: AbelianGroup,
    F: FnMut(&NiceSet<G>) -> Result<Option<(Ordering<G>, T)>, GroupError>,
{
    if set.variant() != Variant::Cmpp {
        return Err(GroupError::NotNice(format!("expected a cmpp set, got {}", set.variant())));
    }
    let mut last_err = None;
    for a in set.elements() {
        // Σ(A \ {a}) = -a ≠ 0, so the remainder is an alspach set
        let rest = set.without(a, Variant::Alspach)?;
        match order_rest(&rest) {
            Ok(Some((o, extra))) => {
                let mut entries = o.entries;
                entries.push(a.clone());
                let ordering = Ordering::new(set.group(), entries);
                assert!(verify_for_set(set, &ordering));
                return Ok((ordering, a.clone(), extra));
            }
            Ok(None) | Err(GroupError::NoOrdering(_)) => {}
            Err(e @ GroupError::BudgetExceeded(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| GroupError::NoOrdering(format!("{:?} (every removal failed)", set.elements()))))
}

/// Orders a cmpp set by removing the first element `a` (ascending) whose
/// remainder has an alspach ordering and appending `a`.
pub fn cmpp_reduce<G: AbelianGroup>(set: &NiceSet<G>, budget: SearchBudget) -> Result<Ordering<G>, GroupError> {
    cmpp_reduce_with(set, |rest| Ok(find_ordering_within(rest, budget)?.map(|o| (o, ())))).map(|(o, _, _)| o)
}
