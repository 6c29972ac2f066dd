use serde::{Deserialize, Serialize};

use super::{AbelianGroup, GroupError, NiceSet, Variant};

/// An arrangement of a set's elements together with its partial sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Ordering<G: AbelianGroup> {
    pub entries: Vec<G::Elem>,
    pub partial_sums: Vec<G::Elem>,
}

impl<G: AbelianGroup> Ordering<G> {
    pub fn new(group: &G, entries: Vec<G::Elem>) -> Self {
        let partial_sums = partial_sums(group, &entries);
        Ordering { entries, partial_sums }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn partial_sums<G: AbelianGroup>(group: &G, entries: &[G::Elem]) -> Vec<G::Elem> {
    let mut acc = group.zero();
    entries
        .iter()
        .map(|x| {
            acc = group.add(&acc, x);
            acc.clone()
        })
        .collect()
}

/// Whether the partial sums of `entries` are pairwise distinct, and for the
/// alspach variant also nonzero.
pub fn verify_ordering<G: AbelianGroup>(group: &G, entries: &[G::Elem], variant: Variant) -> bool {
    let sums = partial_sums(group, entries);
    let zero = group.zero();
    if variant == Variant::Alspach && sums.contains(&zero) {
        return false;
    }
    let mut sorted = sums;
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Whether `ordering` is a permutation of `set` with valid partial sums.
pub fn verify_for_set<G: AbelianGroup>(set: &NiceSet<G>, ordering: &Ordering<G>) -> bool {
    let mut entries = ordering.entries.clone();
    entries.sort();
    entries == set.elements()
        && ordering.partial_sums == partial_sums(set.group(), &ordering.entries)
        && verify_ordering(set.group(), &ordering.entries, set.variant())
}

/// Node budget for the backtracking search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget(u64::MAX);
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::UNLIMITED
    }
}

/// Depth-first search for a valid ordering with no budget.
pub fn find_ordering<G: AbelianGroup>(set: &NiceSet<G>) -> Option<Ordering<G>> {
    find_ordering_within(set, SearchBudget::UNLIMITED).expect("unlimited budget")
}

/// Depth-first search over positions, trying elements in ascending order and
/// pruning a branch as soon as a partial sum repeats (or vanishes, for the
/// alspach variant). Returns `Ok(None)` only after the whole tree is
/// exhausted.
pub fn find_ordering_within<G: AbelianGroup>(
    set: &NiceSet<G>,
    budget: SearchBudget,
) -> Result<Option<Ordering<G>>, GroupError> {
    let g = set.group();
    let elems = set.elements();
    let k = elems.len();
    let forbid_zero = set.variant() == Variant::Alspach;
    let zero = g.zero();

    let mut used = vec![false; k];
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut sums: Vec<G::Elem> = Vec::with_capacity(k);
    // next candidate index to try at each depth
    let mut next = vec![0usize; k + 1];
    let mut nodes = 0u64;

    loop {
        let depth = order.len();
        if depth == k {
            let entries: Vec<G::Elem> = order.iter().map(|&i| elems[i].clone()).collect();
            let found = Ordering { entries, partial_sums: sums };
            debug_assert!(verify_for_set(set, &found));
            return Ok(Some(found));
        }
        let mut advanced = false;
        while next[depth] < k {
            let c = next[depth];
            next[depth] += 1;
            if used[c] {
                continue;
            }
            nodes += 1;
            if nodes > budget.0 {
                return Err(GroupError::BudgetExceeded(format!("search exceeded {} nodes", budget.0)));
            }
            let s = match sums.last() {
                Some(prev) => g.add(prev, &elems[c]),
                None => elems[c].clone(),
            };
            if (forbid_zero && s == zero) || sums.contains(&s) {
                continue;
            }
            used[c] = true;
            order.push(c);
            sums.push(s);
            next[depth + 1] = 0;
            advanced = true;
            break;
        }
        if !advanced {
            match order.pop() {
                Some(c) => {
                    used[c] = false;
                    sums.pop();
                }
                None => return Ok(None),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouplab::{Cyclic, Integers};

    #[test]
    fn verify_examples() {
        let z7 = Cyclic::new(7).unwrap();
        assert!(verify_ordering(&z7, &[1, 2, 3], Variant::Alspach));
        let z5 = Cyclic::new(5).unwrap();
        assert!(!verify_ordering(&z5, &[1, 2, 3], Variant::Alspach));
        assert!(verify_ordering(&z5, &[3], Variant::Alspach));
        // zero partial sum is fine unless alspach
        assert!(verify_ordering(&z5, &[2, 3, 1], Variant::Gadms));
        assert!(!verify_ordering(&z5, &[2, 3, 1], Variant::Alspach));
    }

    #[test]
    fn find_examples() {
        let z5 = Cyclic::new(5).unwrap();
        let a = NiceSet::new(z5, vec![1, 2, 3], Variant::Alspach).unwrap();
        let o = find_ordering(&a).unwrap();
        assert_eq!(o.entries, vec![2, 1, 3]);
        assert_eq!(o.partial_sums, vec![2, 3, 1]);

        let single = NiceSet::new(Integers, vec![-4], Variant::Alspach).unwrap();
        assert_eq!(find_ordering(&single).unwrap().entries, vec![-4]);

        let z7 = Cyclic::new(7).unwrap();
        let c = NiceSet::new(z7, vec![1, 2, 4], Variant::Cmpp).unwrap();
        let o = find_ordering(&c).unwrap();
        assert!(verify_for_set(&c, &o));
    }

    #[test]
    fn no_ordering_and_budget() {
        // {1, 2, 3} in ℤ_6 under gadms: every ordering repeats a partial sum?
        // The search answers either way; compare with plain enumeration.
        let z6 = Cyclic::new(6).unwrap();
        let a = NiceSet::new(z6, vec![1, 2, 3], Variant::Gadms).unwrap();
        let any = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]
            .iter()
            .any(|p| verify_ordering(&z6, p, Variant::Gadms));
        assert_eq!(find_ordering(&a).is_some(), any);

        let z11 = Cyclic::new(11).unwrap();
        let big = NiceSet::new(z11, (1..=9).collect(), Variant::Gadms).unwrap();
        assert!(matches!(find_ordering_within(&big, SearchBudget(2)), Err(GroupError::BudgetExceeded(_))));
    }

    #[test]
    fn verify_for_set_checks_membership() {
        let z7 = Cyclic::new(7).unwrap();
        let a = NiceSet::new(z7, vec![1, 2, 3], Variant::Alspach).unwrap();
        assert!(verify_for_set(&a, &Ordering::new(&z7, vec![1, 2, 3])));
        assert!(!verify_for_set(&a, &Ordering::new(&z7, vec![1, 2, 5])));
        let tampered = Ordering { entries: vec![1, 2, 3], partial_sums: vec![1, 3, 5] };
        assert!(!verify_for_set(&a, &tampered));
    }
}
