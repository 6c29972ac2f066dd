use std::collections::BTreeSet;

use super::{AbelianGroup, GroupError, Variant};

/// A finite subset of a group satisfying the niceness condition of its variant.
///
/// Elements are stored in canonical ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceSet<G: AbelianGroup> {
    group: G,
    elements: Vec<G::Elem>,
    variant: Variant,
}

impl<G: AbelianGroup> NiceSet<G> {
    pub fn new(group: G, elements: Vec<G::Elem>, variant: Variant) -> Result<Self, GroupError> {
        if elements.is_empty() {
            return Err(GroupError::NotNice("empty set".into()));
        }
        if let Some(x) = elements.iter().find(|x| !group.contains(x)) {
            return Err(GroupError::NotNice(format!("{x:?} is not an element of {}", group.spec())));
        }
        let mut sorted = elements;
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GroupError::NotNice("repeated element".into()));
        }
        let zero = group.zero();
        if sorted.contains(&zero) {
            return Err(GroupError::NotNice("contains zero".into()));
        }
        let total = group.sum(&sorted);
        match variant {
            Variant::Alspach if total == zero => {
                return Err(GroupError::NotNice("alspach sets need a nonzero sum".into()));
            }
            Variant::Cmpp => {
                if total != zero {
                    return Err(GroupError::NotNice("cmpp sets need zero sum".into()));
                }
                let members: BTreeSet<&G::Elem> = sorted.iter().collect();
                if let Some(x) = sorted.iter().find(|x| {
                    let minus = group.neg(x);
                    minus != **x && members.contains(&minus)
                }) {
                    return Err(GroupError::NotNice(format!("contains the pair {{{x:?}, -{x:?}}}")));
                }
            }
            _ => {}
        }
        Ok(NiceSet { group, elements: sorted, variant })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sum(&self) -> G::Elem {
        self.group.sum(&self.elements)
    }

    /// The same elements posed for another variant.
    pub fn with_variant(&self, variant: Variant) -> Result<Self, GroupError> {
        NiceSet::new(self.group.clone(), self.elements.clone(), variant)
    }

    /// The set with one element removed.
    pub fn without(&self, x: &G::Elem, variant: Variant) -> Result<Self, GroupError> {
        let rest = self.elements.iter().filter(|y| *y != x).cloned().collect();
        NiceSet::new(self.group.clone(), rest, variant)
    }
}

/// `Δ(A) = {x - y : x, y ∈ A, x ≠ y}`.
pub fn delta_set<G: AbelianGroup>(set: &NiceSet<G>) -> BTreeSet<G::Elem> {
    let g = set.group();
    let mut out = BTreeSet::new();
    for x in set.elements() {
        for y in set.elements() {
            if x != y {
                out.insert(g.sub(x, y));
            }
        }
    }
    out
}

/// `Υ(A)`: `A ∪ Δ(A) ∪ {Σ A}` for alspach and cmpp sets, `A ∪ Δ(A)` for gadms.
pub fn upsilon<G: AbelianGroup>(set: &NiceSet<G>) -> BTreeSet<G::Elem> {
    let mut out = delta_set(set);
    out.extend(set.elements().iter().cloned());
    if set.variant() != Variant::Gadms {
        out.insert(set.sum());
    }
    out
}
