use std::collections::HashSet;

use proptest::prelude::*;
use vcdlab::ppgroups::{Factor, FiniteAbelianGroup, Subgroup};
use vcdlab::typecount::{
    breadth_type_bound, lower_bound_witness, pi_star, PiStarMode, TypeCounter,
};

fn group() -> impl Strategy<Value = FiniteAbelianGroup> {
    proptest::collection::vec((prop_oneof![Just(2u64), Just(3)], 1u32..=3), 1..=3).prop_filter_map(
        "order at most 256",
        |parts| {
            let factors: Vec<Factor> = parts
                .into_iter()
                .map(|(p, e)| Factor { p, e, mult: 1 })
                .collect();
            FiniteAbelianGroup::new(factors)
                .ok()
                .filter(|g| g.order() <= 256)
        },
    )
}

/// A group, some cyclic subgroups of it, and parameters.
fn setup() -> impl Strategy<Value = (FiniteAbelianGroup, Vec<Subgroup>, Vec<u64>)> {
    group().prop_flat_map(|g| {
        let n = g.order();
        (
            Just(g),
            proptest::collection::vec(proptest::collection::vec(0..n, 1..=2), 1..=3),
            proptest::collection::vec(0..n, 0..=6),
        )
            .prop_map(|(g, gens, params)| {
                let subs = gens
                    .into_iter()
                    .map(|gs| Subgroup::generated(g.space(), gs))
                    .collect();
                (g, subs, params)
            })
    })
}

/// Distinct truth vectors over every element, one formula at a time.
fn brute_count(c: &TypeCounter, params: &[u64]) -> usize {
    (0..c.object_size())
        .map(|a| {
            (0..c.formula_count())
                .flat_map(|f| params.iter().map(move |&b| (f, b)))
                .map(|(f, b)| c.truth(f, a, b))
                .collect::<Vec<_>>()
        })
        .collect::<HashSet<_>>()
        .len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_matches_enumeration_and_trivial_bounds((g, subs, params) in setup()) {
        let c = TypeCounter::from_subgroups(g.space(), &subs).unwrap();
        let count = c.count(&params).unwrap();
        prop_assert_eq!(count, brute_count(&c, &params));
        prop_assert!(count as u64 <= g.order());
        prop_assert!(count <= c.class_count());
        // each coset atom splits A into at most t + 1 pieces
        let t = params.iter().collect::<HashSet<_>>().len() as u32;
        prop_assert!(count as u128 <= ((t + 1) as u128).pow(subs.len() as u32));
    }

    #[test]
    fn breadth_bound_holds((g, subs, params) in setup()) {
        let c = TypeCounter::from_subgroups(g.space(), &subs).unwrap();
        let (_, bound) = breadth_type_bound(&c, &params, 64).unwrap();
        prop_assert!(c.count(&params).unwrap() as u128 <= bound.unwrap());
    }

    #[test]
    fn exact_pi_star_dominates_heuristics((g, subs, _) in setup(), seed in any::<u64>()) {
        prop_assume!(g.order() <= 32);
        let c = TypeCounter::from_subgroups(g.space(), &subs).unwrap();
        let exact = |t| pi_star(&c, t, PiStarMode::Exact { subset_cap: 1 << 16 }).unwrap().count;
        let mut prev = 0;
        for t in 0..=3 {
            let e = exact(t);
            prop_assert!(prev <= e);
            prev = e;
            for mode in [PiStarMode::Sampled { trials: 10, seed }, PiStarMode::Greedy { pool: 8, seed }] {
                prop_assert!(pi_star(&c, t, mode).unwrap().count <= e);
            }
        }
    }

    #[test]
    fn witness_realizes_t_to_the_d((g, subs, _) in setup(), t in 2usize..=4) {
        let Ok(w) = lower_bound_witness(&g, &subs, t) else { return Ok(()) };
        let (all, among) = w.verify(&g, &subs).unwrap();
        let target = t.pow(subs.len() as u32);
        prop_assert_eq!(among, target);
        prop_assert!(all >= target);
    }
}
