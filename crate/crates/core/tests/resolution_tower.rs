use std::collections::BTreeMap;

use typforge::graphs::{emn, fullshift, partial_isometry};
use typforge::monoids::{decide_equal, verify_certificate_claim, EqVerdict, MonoidElement, MonoidPresentation, SearchBudget};
use typforge::resolution::{fullshift_monoid, presentation_isomorphism, resolve_tower, top_layer_presentation};

fn relation_multiset(p: &MonoidPresentation, perm: &[usize]) -> BTreeMap<(Vec<u32>, Vec<u32>), usize> {
    let mut out = BTreeMap::new();
    for r in p.relations() {
        let map = |x: &MonoidElement| {
            let mut y = vec![0; x.len()];
            for (i, &c) in x.0.iter().enumerate() {
                y[perm[i]] += c;
            }
            y
        };
        let (a, b) = (map(&r.lhs), map(&r.rhs));
        *out.entry(if a <= b { (a, b) } else { (b, a) }).or_insert(0) += 1;
    }
    out
}

#[test]
fn fullshift_layers_double() {
    let t = resolve_tower(&fullshift(), 6, 1 << 20).unwrap();
    assert!(t.chaining_holds());
    for c in t.counts() {
        assert_eq!(c.bottom, 1 << c.level, "level {}", c.level);
        assert_eq!(c.top, 2 << c.level, "level {}", c.level);
        assert!(c.holds());
    }
}

#[test]
fn fullshift_monoids_match_top_layers() {
    let t = resolve_tower(&fullshift(), 4, 1 << 20).unwrap();
    for n in 1..=4 {
        let m = fullshift_monoid(n).unwrap().presentation;
        assert_eq!(m.rank(), 1 << n);
        assert_eq!(m.relations().len(), 1 << (n - 1));
        let top = top_layer_presentation(t.level(n - 1).unwrap()).unwrap();
        let perm = presentation_isomorphism(&m, &top).unwrap_or_else(|| panic!("no isomorphism at n = {n}"));
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..m.rank()).collect::<Vec<_>>());
        let identity: Vec<usize> = (0..top.rank()).collect();
        assert_eq!(relation_multiset(&m, &perm), relation_multiset(&top, &identity));
    }
}

#[test]
fn fullshift_connecting_maps_respect_relations() {
    for n in 1..=4 {
        let cur = fullshift_monoid(n).unwrap();
        let next = fullshift_monoid(n + 1).unwrap().presentation;
        for r in cur.presentation.relations() {
            let (a, b) = (cur.phi.apply(&r.lhs), cur.phi.apply(&r.rhs));
            let Ok(EqVerdict::Equal { proof }) = decide_equal(&next, &a, &b, &SearchBudget::default()) else {
                panic!("relation image differs at n = {n}");
            };
            assert!(proof.meet(&next, &a, &b).is_some());
        }
    }
}

#[test]
fn transition_maps_are_homomorphisms_with_valid_proofs() {
    for sg in [fullshift(), emn(2, 3).unwrap(), partial_isometry()] {
        let t = resolve_tower(&sg, 3, 1 << 20).unwrap();
        assert!(t.chaining_holds());
        assert!(t.counts().iter().all(|c| c.holds()));
        for n in 0..t.depth() {
            let map = t.transition_map(n).unwrap();
            let target = t.monoid(n + 1).unwrap();
            for w in &map.proofs {
                verify_certificate_claim(target, &w.claim).unwrap();
            }
            if !target.is_graded() {
                continue;
            }
            for r in t.monoid(n).unwrap().relations() {
                let (a, b) = (map.map.apply(&r.lhs), map.map.apply(&r.rhs));
                match decide_equal(target, &a, &b, &SearchBudget::default()).unwrap() {
                    EqVerdict::Equal { proof } => assert!(proof.meet(target, &a, &b).is_some()),
                    other => panic!("relation not preserved at level {n}: {other:?}"),
                }
            }
        }
    }
}
