mod common;

use pebblekit::corpus::connected_graphs;
use pebblekit::pebbles::enumerate_distributions;
use pebblekit::search::{maximum_unsolvable, per_target_numbers};
use pebblekit::{
    cheap_number, pebbling_number, t_fold_pebbling_number, Distribution, Error, Graph, ScanOptions, Solver,
    SolverOptions, Strategy,
};

fn size_scan() -> ScanOptions {
    ScanOptions { strategy: Strategy::SizeScan, ..ScanOptions::default() }
}

#[test]
fn both_strategies_match_the_reference() {
    for n in 1..=4 {
        for g in connected_graphs(n) {
            let adj = common::adjacency(&g);
            for t in 1..=2 {
                for d in enumerate_distributions(n, t) {
                    let want = common::pi(&adj, d.counts());
                    let down = pebbling_number(&g, &d, &ScanOptions::default()).unwrap();
                    let scan = pebbling_number(&g, &d, &size_scan()).unwrap();
                    assert_eq!(down.value, want, "down-set on {:?} d={d}", g.edges());
                    assert_eq!(scan.value, want, "size scan on {:?} d={d}", g.edges());
                }
            }
        }
    }
}

#[test]
fn witnesses_are_unsolvable_and_maximal() {
    for g in connected_graphs(4).into_iter().chain([Graph::path_power(6, 2).unwrap()]) {
        for t in 1..=2u16 {
            for r in 0..g.n() {
                let d = Distribution::target(g.n(), r, t);
                let res = t_fold_pebbling_number(&g, r, t, &ScanOptions::default()).unwrap();
                let w = res.witness.expect("positive demand leaves some unsolvable configuration");
                assert_eq!(w.size() + 1, res.value);
                let s = Solver::new(&g, &d, SolverOptions::unpruned()).unwrap();
                assert!(!s.is_solvable(w.counts()).unwrap());
            }
        }
    }
}

#[test]
fn maximum_unsolvable_lists_every_tie() {
    for g in connected_graphs(4) {
        let adj = common::adjacency(&g);
        for d in enumerate_distributions(4, 2) {
            let (res, all) = maximum_unsolvable(&g, &d, &ScanOptions::default()).unwrap();
            let size = (res.value - 1) as u16;
            let want: Vec<Vec<u16>> =
                common::compositions(4, size).into_iter().filter(|c| !common::solvable(&adj, c, d.counts())).collect();
            let mut got: Vec<Vec<u16>> = all.iter().map(|c| c.counts().to_vec()).collect();
            got.sort();
            assert_eq!(got, want, "d={d}");
        }
    }
}

#[test]
fn removing_an_edge_between_neighbors_of_the_target_keeps_pi() {
    let opts = ScanOptions::default();
    let mut cases = 0;
    for n in 3..=5 {
        for g in connected_graphs(n) {
            for r in 0..n {
                let nb = g.neighbors(r);
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        if !g.is_adjacent(a, b) {
                            continue;
                        }
                        let h = g.without_edge(a, b).unwrap();
                        for t in 1..=2 {
                            let before = t_fold_pebbling_number(&g, r, t, &opts).unwrap().value;
                            let after = t_fold_pebbling_number(&h, r, t, &opts).unwrap().value;
                            assert_eq!(before, after, "{:?} r=v{} e=v{}v{} t={t}", g.edges(), r + 1, a + 1, b + 1);
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(cases > 100);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let g = Graph::path_power(7, 2).unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let d = Distribution::target(7, 0, 2);
            let scan = pebbling_number(&g, &d, &size_scan()).unwrap();
            let per = per_target_numbers(&g, 1, &ScanOptions::default()).unwrap();
            (scan, per)
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn cheap_threshold_on_small_graphs() {
    // every configuration of size 2^diam on these has a cheap solution, and
    // 2^diam - 1 pebbles on a farthest vertex cannot reach the target at all
    for g in [Graph::path(3).unwrap(), Graph::path(4).unwrap(), Graph::complete(4).unwrap()] {
        let diam = g.metric().diam;
        let q = cheap_number(&g, 0, &ScanOptions::default()).unwrap();
        assert!(q.value >= 1 << diam);
        let adj = common::adjacency(&g);
        let budget = (1usize << diam) - 1;
        let m = q.value as u16;
        for c in common::compositions(g.n(), m) {
            let moves = common::min_moves(&adj, &c, &common::target(g.n(), 0, 1)).unwrap();
            assert!(moves <= budget, "c={c:?}");
        }
        let w = q.witness.unwrap();
        let moves = common::min_moves(&adj, w.counts(), &common::target(g.n(), 0, 1));
        assert!(moves.is_none_or(|k| k > budget));
    }
}

#[test]
fn caps_are_reported() {
    let g = Graph::path(6).unwrap();
    let d = Distribution::target(6, 0, 2);
    let tight = ScanOptions { cap: 10, ..ScanOptions::default() };
    assert!(matches!(pebbling_number(&g, &d, &tight), Err(Error::CapExceeded { .. })));
    let tight = ScanOptions { cap: 10, ..size_scan() };
    assert!(matches!(pebbling_number(&g, &d, &tight), Err(Error::CapExceeded { .. })));
}
