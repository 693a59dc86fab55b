use std::collections::BTreeMap;

use proptest::prelude::*;
use vcdlab::lattice::breadth;
use vcdlab::ppgroups::{
    pp_lattice, slow_tuple_lattice, Factor, FiniteAbelianGroup, DEFAULT_ELEMENT_CAP,
};
use vcdlab::szmielew::{
    breadth_finite_exponent, classify, d_bounds, d_of, d_of_exhaustive, Cardinal,
    SzmielewInvariants,
};

fn set() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::btree_set(1u64..40, 1..=12).prop_map(|s| s.into_iter().collect())
}

/// `(p, n) -> multiplicity` with `0` standing for `ℵ0`.
fn alpha_map() -> impl Strategy<Value = BTreeMap<(u64, u32), u32>> {
    proptest::collection::btree_map(
        (prop_oneof![Just(2u64), Just(3), Just(5)], 1u32..=6),
        0u32..=2,
        0..=6,
    )
}

fn invariants(map: &BTreeMap<(u64, u32), u32>) -> SzmielewInvariants {
    let entries: Vec<(u64, u32, Cardinal)> = map
        .iter()
        .map(|(&(p, n), &c)| {
            (
                p,
                n,
                if c == 0 {
                    Cardinal::Aleph0
                } else {
                    Cardinal::Finite(c as u64)
                },
            )
        })
        .collect();
    SzmielewInvariants::from_alpha(&entries)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn d_is_bracketed_and_matches_exhaustive_search(s in set()) {
        let r = d_of(&s);
        let b = d_bounds(&s).unwrap();
        prop_assert!(b.lower <= r.d && r.d <= b.upper_lemma && r.d <= b.upper_simple);
        prop_assert_eq!(r.d, d_of_exhaustive(&s));
        prop_assert_eq!(r.j_sequence.len(), r.d);
    }

    #[test]
    fn d_is_shift_invariant(s in set(), k in 1u64..50) {
        let shifted: Vec<u64> = s.iter().map(|x| x + k).collect();
        prop_assert_eq!(d_of(&s).d, d_of(&shifted).d);
    }

    #[test]
    fn consecutive_runs(start in 1u64..30, n in 1u64..=20) {
        let run: Vec<u64> = (start..start + n).collect();
        prop_assert_eq!(d_of(&run).d as u64, n.div_ceil(2));
    }

    #[test]
    fn d_is_one_exactly_for_a_point_or_an_adjacent_pair(s in set()) {
        let expected = s.len() == 1 || (s.len() == 2 && s[1] == s[0] + 1);
        prop_assert_eq!(d_of(&s).d == 1, expected);
    }

    #[test]
    fn finite_exponent_breadth_matches_pp_lattice(
        l2 in proptest::sample::subsequence(vec![1u32, 2, 3, 4, 5], 0..=3),
        l3 in proptest::sample::subsequence(vec![1u32, 2, 3], 0..=2),
    ) {
        prop_assume!(!l2.is_empty() || !l3.is_empty());
        let mut entries = Vec::new();
        let mut factors = Vec::new();
        for (p, l) in [(2u64, &l2), (3, &l3)] {
            for &e in l {
                entries.push((p, e, Cardinal::Finite(1)));
                factors.push(Factor { p, e, mult: 1 });
            }
        }
        let g = FiniteAbelianGroup::new(factors).unwrap();
        prop_assume!(g.order() <= 1 << 12);
        let s = SzmielewInvariants::from_alpha(&entries);
        let (l, _) = pp_lattice(&g, DEFAULT_ELEMENT_CAP).unwrap();
        prop_assert_eq!(breadth_finite_exponent(&s).unwrap(), breadth(&l));
    }

    #[test]
    fn finite_alpha_changes_nothing(map in alpha_map(), p in prop_oneof![Just(2u64), Just(3), Just(7)], n in 1u32..=8, k in 1u64..=3) {
        prop_assume!(!map.contains_key(&(p, n)));
        let before = classify(&invariants(&map), 3).unwrap();
        let after = classify(&invariants(&map).with_alpha(p, n, Cardinal::Finite(k)), 3).unwrap();
        prop_assert_eq!(before.dp_minimal, after.dp_minimal);
        prop_assert_eq!(before.has_uniform_vc_bound, after.has_uniform_vc_bound);
        prop_assert_eq!(before.d, after.d);
    }

    #[test]
    fn dp_minimality_is_the_chain_criterion(map in alpha_map()) {
        let r = classify(&invariants(&map), 2).unwrap();
        let mut aleph: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (&(p, n), &c) in &map {
            if c == 0 {
                aleph.entry(p).or_default().push(n);
            }
        }
        if r.infinite {
            // one prime carries the aleph0 part, and its tuple lattice is a chain
            let chain = aleph.len() == 1
                && aleph.values().all(|u| breadth(&slow_tuple_lattice(u).unwrap().lattice) == 1);
            prop_assert_eq!(r.dp_minimal, chain);
            prop_assert_eq!(r.vc_exact_slope, r.d.map(|d| d as u64));
        }
        for b in &r.vc_bounds {
            let d = r.d.unwrap() as u64;
            prop_assert!(b.lower <= d * b.m && d * b.m <= b.upper);
        }
    }
}
