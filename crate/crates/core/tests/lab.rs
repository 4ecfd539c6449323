mod common;

use pebblekit::chordal::is_chordal;
use pebblekit::corpus::connected_graphs;
use pebblekit::lab::{
    check_stacking, check_strong_target, check_weak_target, is_d_small, is_wide_instance, simplicial_max_scan,
    wide_sharpness, ConjectureReport, ConjectureVerdict,
};
use pebblekit::parse::graph_spec;
use pebblekit::pebbles::enumerate_distributions;
use pebblekit::{pebbling_number, Distribution, Error, Graph, ScanOptions};

fn opts() -> ScanOptions {
    ScanOptions::default()
}

#[test]
fn documented_target_checks() {
    let strong = |g: &Graph| check_strong_target(g, 2, &opts()).unwrap().verdict;
    assert_eq!(strong(&Graph::path(4).unwrap()), ConjectureVerdict::Holds);
    assert_eq!(strong(&Graph::path_power(5, 2).unwrap()), ConjectureVerdict::Holds);
    let c5 = check_strong_target(&Graph::cycle(5).unwrap(), 2, &opts()).unwrap();
    assert_eq!(c5.checked, 15);
    let weak = |g: &Graph| check_weak_target(g, 2, &opts()).unwrap().verdict;
    assert_eq!(weak(&Graph::complete(4).unwrap()), ConjectureVerdict::Holds);
    assert_eq!(weak(&Graph::cycle(4).unwrap()), ConjectureVerdict::Holds);
}

#[test]
fn strong_implies_weak_on_small_graphs() {
    for n in 2..=4 {
        for g in connected_graphs(n) {
            for t in 1..=2 {
                let s = check_strong_target(&g, t, &opts()).unwrap();
                let w = check_weak_target(&g, t, &opts()).unwrap();
                if s.verdict == ConjectureVerdict::Holds {
                    assert_eq!(w.verdict, ConjectureVerdict::Holds);
                }
            }
        }
    }
}

#[test]
fn reports_replay_from_json() {
    let r = check_strong_target(&Graph::cycle(5).unwrap(), 2, &opts()).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    let back: ConjectureReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    let g = graph_spec(&back.graph).unwrap();
    assert_eq!(check_strong_target(&g, back.t, &opts()).unwrap(), r);
    assert_eq!(back.violations.is_empty(), back.verdict != ConjectureVerdict::Violated);
}

#[test]
fn tight_caps_skip_instead_of_guessing() {
    let tight = ScanOptions { cap: 3, ..opts() };
    let r = check_strong_target(&Graph::path(5).unwrap(), 2, &tight).unwrap();
    assert_eq!(r.verdict, ConjectureVerdict::SkippedCap);
    assert!(r.violations.is_empty());
}

#[test]
fn d_small_and_stacking_examples() {
    let p52 = Graph::path_power(5, 2).unwrap();
    let s = is_d_small(&p52, &Distribution::new(vec![2, 0, 0, 0, 0]), &opts()).unwrap();
    assert_eq!(s.pi, 9);
    let p4 = Graph::path(4).unwrap();
    let s = is_d_small(&p4, &Distribution::new(vec![0, 0, 0, 1]), &opts()).unwrap();
    assert_eq!(s.pi, 8);
    let p3 = Graph::path(3).unwrap();
    let s = check_stacking(&p3, &Distribution::new(vec![1, 1, 1]), &opts()).unwrap();
    assert!(s.holds);
    assert!(s.witness.unwrap().is_stacked());
    assert!(matches!(check_stacking(&p3, &Distribution::new(vec![1, 0, 1]), &opts()), Err(Error::Precondition(_))));
}

#[test]
fn stacked_witness_exists_for_full_support() {
    for n in 1..=4 {
        for g in connected_graphs(n) {
            for t in n as u16..=n as u16 + 1 {
                for d in enumerate_distributions(n, t).filter(|d| d.support_size() == n) {
                    let s = check_stacking(&g, &d, &opts()).unwrap();
                    assert!(s.holds, "{:?} d={d}", g.edges());
                }
            }
        }
    }
}

#[test]
fn wide_instances_are_small_and_sharp() {
    for n in 2..=6 {
        for k in 1..=3 {
            let g = Graph::path_power(n, k).unwrap();
            for t in 1..=3u16 {
                if !is_wide_instance(n, k, t.into()).unwrap() {
                    continue;
                }
                for d in enumerate_distributions(n, t).filter(|d| d.support_size() < n) {
                    let sharp = wide_sharpness(n, k, &d, &opts()).unwrap();
                    assert!(sharp.witness_unsolvable);
                    assert_eq!(sharp.pi, sharp.expected, "P_{n}^({k}) d={d}");
                    let exact = n as u64 + 2 * d.size() - 1 - d.support_size() as u64;
                    assert_eq!(sharp.pi, exact);
                    assert!(is_d_small(&g, &d, &opts()).unwrap().holds);
                }
            }
        }
    }
}

#[test]
fn simplicial_targets_attain_the_maximum_on_small_chordal_graphs() {
    for n in 1..=5 {
        for g in connected_graphs(n).into_iter().filter(|g| is_chordal(g).is_some()) {
            let scan = simplicial_max_scan(&g, &opts()).unwrap();
            let adj = common::adjacency(&g);
            let want: Vec<u64> = (0..n).map(|r| common::pi(&adj, &common::target(n, r, 1))).collect();
            assert_eq!(scan.per_target, want);
            assert!(scan.attained_at_simplicial, "{:?}", g.edges());
        }
    }
}

#[test]
fn cover_formula_on_small_complete_graphs() {
    for n in 1..=3 {
        let g = Graph::complete(n).unwrap();
        for t in n as u16..=n as u16 + 2 {
            for d in enumerate_distributions(n, t).filter(|d| d.support_size() == n) {
                let formula = pebblekit::lab::cover_pebbling_complete(n, &d).unwrap();
                assert_eq!(formula, pebbling_number(&g, &d, &opts()).unwrap().value, "d={d}");
            }
        }
    }
}
