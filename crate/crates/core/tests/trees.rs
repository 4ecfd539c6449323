mod common;

use std::collections::BTreeSet;

use pebblekit::corpus::{tree_canonical_form, trees};
use pebblekit::lab::tree_cost_scan;
use pebblekit::tree::{
    formula_from_lengths, leaf_count, longest_path_ends, max_path_partition, strong_target_bound_tree, tree_pi,
    tree_pi_all, tree_pi_global,
};
use pebblekit::{Distribution, Graph, ScanOptions};

fn corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(trees).collect()
}

#[test]
fn partitions_cover_every_edge_once() {
    for t in corpus(7) {
        for r in 0..t.n() {
            let part = max_path_partition(&t, r).unwrap();
            let mut covered = vec![r];
            let mut edges = BTreeSet::new();
            for path in &part.paths {
                assert!(covered.contains(&path[0]), "path must start in the covered set");
                for w in path.windows(2) {
                    assert!(t.is_adjacent(w[0], w[1]));
                    assert!(edges.insert((w[0].min(w[1]), w[0].max(w[1]))));
                }
                covered.extend(&path[1..]);
            }
            assert_eq!(edges.len(), t.edge_count());
            let lengths = part.lengths();
            assert!(lengths.windows(2).all(|w| w[0] >= w[1]), "{lengths:?}");
            let expected = if t.n() == 1 {
                0
            } else if t.degree(r) == 1 {
                leaf_count(&t) - 1
            } else {
                leaf_count(&t)
            };
            assert_eq!(lengths.len(), expected);
        }
    }
}

#[test]
fn formula_matches_reference_on_small_trees() {
    for t in corpus(5) {
        let adj = common::adjacency(&t);
        for r in 0..t.n() {
            for fold in 1..=2u16 {
                let want = common::pi(&adj, &common::target(t.n(), r, fold));
                assert_eq!(tree_pi(&t, r, fold.into()).unwrap(), want, "{:?} r=v{} t={fold}", t.edges(), r + 1);
            }
        }
    }
}

#[test]
fn a_longest_path_end_maximizes_the_root_value() {
    for t in corpus(7) {
        for fold in 1..=4 {
            let all = tree_pi_all(&t, fold).unwrap();
            assert_eq!(*all.iter().max().unwrap(), tree_pi_global(&t, fold).unwrap(), "{:?}", t.edges());
        }
        let (a, b) = longest_path_ends(&t).unwrap();
        assert_eq!(t.metric().dist(a, b), t.metric().diam);
    }
}

#[test]
fn each_extra_target_costs_at_least_two() {
    // a lone vertex gains exactly one per target
    for t in corpus(7).into_iter().filter(|t| t.n() >= 2) {
        for fold in 2..=5 {
            let now = tree_pi_global(&t, fold).unwrap();
            let before = tree_pi_global(&t, fold - 1).unwrap();
            assert!(now >= before + 2, "{:?} t={fold}", t.edges());
        }
    }
}

#[test]
fn value_does_not_depend_on_labels() {
    // relabel each tree by reversing vertex numbers and compare root-by-root
    for t in corpus(7) {
        let n = t.n();
        let flipped: Vec<(usize, usize)> = t.edges().iter().map(|&(u, v)| (n - 1 - u, n - 1 - v)).collect();
        let h = Graph::from_edges(n, &flipped).unwrap();
        assert_eq!(tree_canonical_form(&t), tree_canonical_form(&h));
        for r in 0..n {
            assert_eq!(tree_pi(&t, r, 2).unwrap(), tree_pi(&h, n - 1 - r, 2).unwrap());
        }
    }
}

#[test]
fn strong_bound_examples() {
    let star = Graph::tree(&[(1, 2), (1, 3), (1, 4)]).unwrap();
    assert_eq!(tree_pi_global(&star, 1).unwrap(), 5);
    let p5 = Graph::path(5).unwrap();
    let d = Distribution::new(vec![0, 0, 3, 0, 0]);
    assert_eq!(strong_target_bound_tree(&p5, &d).unwrap(), tree_pi_global(&p5, 3).unwrap());
    assert_eq!(formula_from_lengths(&[], 3).unwrap(), 3);
    assert!(formula_from_lengths(&[64], 1).is_err());
}

#[test]
fn cheap_solutions_exist_at_the_bound() {
    let opts = ScanOptions::default();
    for t in corpus(5) {
        for fold in 1..=2 {
            for row in tree_cost_scan(&t, fold, &opts).unwrap() {
                assert!(row.holds, "{:?} t={fold} {row:?}", t.edges());
            }
        }
    }
}
