mod common;

use pebblekit::corpus::connected_graphs;
use pebblekit::pebbles::{enumerate_distributions, potential};
use pebblekit::{Configuration, Distribution, Engine, Graph, Solver, SolverOptions};
use proptest::prelude::*;

fn variants() -> Vec<(&'static str, SolverOptions)> {
    let moves = SolverOptions { engine: Engine::Moves, ..SolverOptions::default() };
    vec![
        ("firing", SolverOptions::default()),
        ("firing-unpruned", SolverOptions::unpruned()),
        ("moves", moves),
        ("moves-unpruned", SolverOptions { engine: Engine::Moves, ..SolverOptions::unpruned() }),
        ("potential-only", SolverOptions { weight_prune: false, ..SolverOptions::default() }),
    ]
}

/// Small graphs, all configurations up to `max_c`, all distributions up to `max_d`.
fn for_each_instance(max_n: usize, max_c: u16, max_d: u16, mut f: impl FnMut(&Graph, &[u16], &Distribution)) {
    for n in 1..=max_n {
        for g in connected_graphs(n) {
            for t in 1..=max_d {
                for d in enumerate_distributions(n, t) {
                    for m in 0..=max_c {
                        for c in common::compositions(n, m) {
                            f(&g, &c, &d);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn every_engine_agrees_with_the_reference() {
    let mut checked = 0u64;
    for_each_instance(4, 6, 2, |g, c, d| {
        let adj = common::adjacency(g);
        let want = common::solvable(&adj, c, d.counts());
        for (name, opts) in variants() {
            let s = Solver::new(g, d, opts).unwrap();
            let got = s.solve(c).unwrap();
            assert_eq!(got.is_solvable(), want, "{name} on {:?} c={c:?} d={d}", g.edges());
            let cert = got.into_certificate();
            assert_eq!(cert.verify(g, &Configuration::new(c.to_vec()), d).unwrap(), want);
        }
        checked += 1;
    });
    assert!(checked > 10_000);
}

#[test]
fn bounding_moves_by_pebble_surplus_changes_nothing() {
    for_each_instance(4, 6, 2, |g, c, d| {
        let full = Solver::new(g, d, SolverOptions::default()).unwrap();
        let surplus = c.iter().map(|&x| u64::from(x)).sum::<u64>().saturating_sub(d.size());
        let capped = Solver::new(g, d, SolverOptions { max_moves: Some(surplus), ..SolverOptions::default() }).unwrap();
        assert_eq!(full.is_solvable(c).unwrap(), capped.is_solvable(c).unwrap(), "c={c:?} d={d}");
    });
}

#[test]
fn solvability_is_monotone_and_down_closed() {
    for_each_instance(4, 6, 2, |g, c, d| {
        let s = Solver::new(g, d, SolverOptions::default()).unwrap();
        let here = s.is_solvable(c).unwrap();
        for v in 0..c.len() {
            let mut up = c.to_vec();
            up[v] += 1;
            if here {
                assert!(s.is_solvable(&up).unwrap(), "adding to v{} broke c={c:?} d={d}", v + 1);
            }
            if !here && c[v] > 0 {
                let mut down = c.to_vec();
                down[v] -= 1;
                assert!(!s.is_solvable(&down).unwrap(), "removing from v{} fixed c={c:?} d={d}", v + 1);
            }
        }
    });
}

#[test]
fn low_potential_is_never_solvable() {
    for n in 1..=5 {
        for g in connected_graphs(n) {
            let adj = common::adjacency(&g);
            for t in 1..=3 {
                for d in enumerate_distributions(n, t) {
                    for m in 0..=8 {
                        for c in common::compositions(n, m) {
                            if common::potential_by_search(&c, d.counts()) < d.size() {
                                assert!(!common::solvable(&adj, &c, d.counts()), "c={c:?} d={d}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn min_moves_matches_breadth_first_reference() {
    for n in 1..=4 {
        for g in connected_graphs(n) {
            let adj = common::adjacency(&g);
            for r in 0..n {
                let d = Distribution::target(n, r, 1);
                let s = Solver::new(&g, &d, SolverOptions::default()).unwrap();
                for m in 0..=7 {
                    for c in common::compositions(n, m) {
                        let got = s.min_moves(&c).unwrap();
                        let want = common::min_moves(&adj, &c, d.counts());
                        assert_eq!(got.as_ref().map(Vec::len), want, "c={c:?} r=v{}", r + 1);
                        if let Some(moves) = got {
                            let cert = pebblekit::SolveCertificate { solvable: true, moves: Some(moves), reason: None };
                            assert!(cert.verify(&g, &Configuration::new(c.clone()), &d).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn worked_potential_examples() {
    let c = [0, 1, 1, 2, 7];
    assert_eq!(potential(&c, &[2, 0, 0, 0, 0]), 4);
    assert_eq!(potential(&c, &[1, 0, 0, 0, 2]), 5);
}

fn path_power_instance() -> impl Strategy<Value = (usize, usize, Vec<u16>)> {
    (2usize..=8, 1usize..=3).prop_flat_map(|(n, k)| (Just(n), Just(k), prop::collection::vec(0u16..6, n)))
}

proptest! {
    #[test]
    fn potential_agrees_with_search(c in prop::collection::vec(0u16..20, 1..12), seed in any::<u64>()) {
        let d: Vec<u16> = c.iter().enumerate().map(|(i, _)| ((seed >> (i % 60)) & 3) as u16).collect();
        prop_assert_eq!(potential(&c, &d), common::potential_by_search(&c, &d));
    }

    #[test]
    fn reachable_configurations_are_solvable_targets(
        (n, k, c) in path_power_instance(),
        picks in prop::collection::vec(any::<u16>(), 0..6),
    ) {
        let g = Graph::path_power(n, k).unwrap();
        let mut cur = Configuration::new(c.clone());
        for p in picks {
            let sources: Vec<usize> = (0..n).filter(|&v| cur.get(v) >= 2).collect();
            if sources.is_empty() {
                break;
            }
            let u = sources[p as usize % sources.len()];
            let nb = g.neighbors(u);
            cur = cur.apply_move(&g, u, nb[(p as usize / 7) % nb.len()]).unwrap();
        }
        let d = Distribution::new(cur.counts().to_vec());
        if d.size() > 0 {
            let s = Solver::new(&g, &d, SolverOptions::default()).unwrap();
            prop_assert!(s.is_solvable(&c).unwrap());
        }
    }

    #[test]
    fn firing_matches_reference_on_path_powers(
        (n, k, c) in path_power_instance(),
        r in 0usize..8,
        t in 1u16..=2,
    ) {
        let g = Graph::path_power(n, k).unwrap();
        let d = Distribution::target(n, r % n, t);
        let got = Solver::new(&g, &d, SolverOptions::default()).unwrap().is_solvable(&c).unwrap();
        prop_assert_eq!(got, common::solvable(&common::adjacency(&g), &c, d.counts()));
    }
}
