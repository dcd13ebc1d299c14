#![allow(clippy::needless_range_loop)]

mod common;

use common::{
    boolean_chain_count, brute_reduction, chains_from_covers, closure, factorial, full_corpus,
};
use latcut::generators::boolean;
use latcut::poset::build_poset;
use proptest::prelude::*;

/// Random DAG edges on `0..n` (forward pairs only), possibly redundant.
fn dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let len = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), len)).prop_map(move |(n, keep)| {
            let edges = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(&e, _)| e)
                .collect();
            (n, edges)
        })
    })
}

/// Relabels a DAG by a permutation so ids are not already topologically sorted.
fn shuffled_dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    dag()
        .prop_flat_map(|(n, edges)| {
            (
                Just(n),
                Just(edges),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, edges, perm)| {
            let edges = edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
            (n, edges)
        })
}

proptest! {
    #[test]
    fn covers_equal_brute_force_reduction((n, edges) in shuffled_dag()) {
        let p = build_poset(n, &edges, None).unwrap();
        let mut expected = brute_reduction(n, &edges);
        expected.sort_unstable();
        prop_assert_eq!(p.covers(), expected.as_slice());
    }

    #[test]
    fn leq_is_reachability((n, edges) in shuffled_dag()) {
        let p = build_poset(n, &edges, None).unwrap();
        let reach = closure(n, p.covers());
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(p.leq(x, y).unwrap(), reach[x][y]);
            }
        }
    }

    #[test]
    fn reduction_is_idempotent((n, edges) in shuffled_dag()) {
        let p = build_poset(n, &edges, None).unwrap();
        let again = build_poset(n, p.covers(), None).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn chains_run_from_minimal_to_maximal((n, edges) in shuffled_dag()) {
        let p = build_poset(n, &edges, None).unwrap();
        let minimal = p.minimal_elements();
        let maximal = p.maximal_elements();
        let chains = p.maximal_chains().unwrap();
        for c in &chains {
            prop_assert_eq!(c.iter().filter(|x| minimal.contains(x)).count(), 1);
            prop_assert_eq!(c.iter().filter(|x| maximal.contains(x)).count(), 1);
            prop_assert!(p.check_maximal_chain(c).is_ok());
        }
        let as_vecs: Vec<Vec<usize>> = chains.iter().map(|c| c.to_vec()).collect();
        // already sorted and duplicate-free
        prop_assert_eq!(as_vecs, chains_from_covers(&p));
        prop_assert_eq!(chains.len() as u128, p.count_maximal_chains());
    }
}

#[test]
fn cyclic_inputs_are_rejected() {
    for (n, edges) in [
        (2, vec![(0, 1), (1, 0)]),
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 1)]),
    ] {
        assert!(matches!(
            build_poset(n, &edges, None),
            Err(latcut::Error::Cycle(_))
        ));
    }
}

#[test]
fn boolean_chain_counts_are_factorials() {
    for n in 1..=5u32 {
        let p = boolean(n as usize).unwrap();
        let chains = p.maximal_chains().unwrap().len() as u64;
        assert_eq!(chains, boolean_chain_count(n));
        assert_eq!(chains, factorial(n as u64));
    }
}

#[test]
fn corpus_reduction_idempotent() {
    for f in full_corpus() {
        let p = &f.poset;
        let again = build_poset(p.len(), p.covers(), p.labels().map(<[String]>::to_vec)).unwrap();
        assert_eq!(&again, p, "{}", f.name);
    }
}
