use std::collections::BTreeSet;

use nullsum_core::arith::next_prime_after;
use nullsum_core::grouplab::*;
use proptest::prelude::*;

fn permutations(v: &[u64]) -> Vec<Vec<u64>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Partial sums checked without the library.
fn brute_valid(n: u64, order: &[u64], variant: Variant) -> bool {
    let mut seen = BTreeSet::new();
    let mut s = 0;
    for x in order {
        s = (s + x) % n;
        if (variant == Variant::Alspach && s == 0) || !seen.insert(s) {
            return false;
        }
    }
    true
}

#[test]
fn search_is_complete_against_enumeration() {
    let mut checked = 0;
    for n in 2..=9u64 {
        let g = Cyclic::new(n).unwrap();
        for k in 1..=(n as usize - 1).min(6) {
            for s in sweep::nonzero_subsets(n, k) {
                for variant in Variant::ALL {
                    let Ok(set) = NiceSet::new(g, s.clone(), variant) else { continue };
                    let exists = permutations(&s).iter().any(|p| brute_valid(n, p, variant));
                    let found = find_ordering(&set);
                    assert_eq!(found.is_some(), exists, "Z{n} {s:?} {variant}");
                    if let Some(o) = found {
                        assert!(brute_valid(n, &o.entries, variant));
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500);
}

fn int_set() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-30i64..=30, 1..=5).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn lift_soundness(elems in int_set(), bump in 0u64..40, gadms in any::<bool>()) {
        let variant = if gadms { Variant::Gadms } else { Variant::Alspach };
        let Ok(set) = NiceSet::new(Integers, elems, variant) else { return Ok(()) };
        let (p0, _) = reduce_mod_prime(&set).unwrap();
        // any prime at or above the smallest admissible one works
        let mut p = p0;
        for _ in 0..bump % 4 {
            p = next_prime_after(p);
        }
        let zp = Cyclic::new(p).unwrap();
        let projected = NiceSet::new(zp, set.elements().iter().map(|&z| zp.reduce(z)).collect(), variant).unwrap();
        // every valid image ordering lifts, not only the first one found
        for perm in permutations(projected.elements()) {
            if !verify_ordering(&zp, &perm, variant) {
                continue;
            }
            let image = Ordering::new(&zp, perm);
            let lifted = lift_ordering(&set, &zp, &image, |z| Ok(zp.reduce(*z))).unwrap();
            prop_assert!(verify_for_set(&set, &lifted));
            let back: Vec<u64> = lifted.entries.iter().map(|&z| zp.reduce(z)).collect();
            prop_assert_eq!(back, image.entries);
        }
    }

    #[test]
    fn embedding_kernel_misses_upsilon(
        elems in prop::collection::btree_set(prop::collection::vec(-5i64..=5, 3), 1..=4),
        variant in prop::sample::select(vec![Variant::Alspach, Variant::Gadms]),
    ) {
        let Ok(set) = NiceSet::new(Free::new(3).unwrap(), elems.into_iter().collect(), variant) else { return Ok(()) };
        let (emb, img) = embed_to_z(&set).unwrap();
        for z in upsilon(&set) {
            prop_assert_ne!(emb.apply(&z).unwrap(), 0);
        }
        prop_assert_eq!(img.len(), set.len());
        let t = order_in_free_group(&set, SearchBudget::UNLIMITED).unwrap();
        prop_assert!(verify_for_set(&set, &t.ordering));
    }
}

#[test]
fn small_sweeps_are_clean() {
    for n in 2..=12u64 {
        for k in 1..=(n as usize - 1).min(4) {
            for v in Variant::ALL {
                let r = sweep(n, k, v, SweepBudget::default()).unwrap();
                assert!(r.failures.is_empty(), "Z{n} k={k} {v}: {:?}", r.failures);
            }
        }
    }
}
