//! Naive reference implementations shared by the integration tests. Nothing
//! here calls the library's search code; graphs only supply adjacency lists.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use pebblekit::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

fn covers(c: &[u16], d: &[u16]) -> bool {
    c.iter().zip(d).all(|(a, b)| a >= b)
}

/// Plain depth-first reachability over single moves.
pub fn solvable(adj: &[Vec<usize>], c: &[u16], d: &[u16]) -> bool {
    fn go(adj: &[Vec<usize>], c: &mut Vec<u16>, d: &[u16], seen: &mut HashSet<Vec<u16>>) -> bool {
        if covers(c, d) {
            return true;
        }
        if !seen.insert(c.clone()) {
            return false;
        }
        for u in 0..c.len() {
            if c[u] < 2 {
                continue;
            }
            for &v in &adj[u] {
                c[u] -= 2;
                c[v] += 1;
                let ok = go(adj, c, d, seen);
                c[u] += 2;
                c[v] -= 1;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(adj, &mut c.to_vec(), d, &mut HashSet::new())
}

/// Fewest moves to cover `d`, by breadth-first search.
pub fn min_moves(adj: &[Vec<usize>], c: &[u16], d: &[u16]) -> Option<usize> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(c.to_vec(), 0usize)]);
    seen.insert(c.to_vec());
    while let Some((cur, k)) = queue.pop_front() {
        if covers(&cur, d) {
            return Some(k);
        }
        for u in 0..cur.len() {
            if cur[u] < 2 {
                continue;
            }
            for &v in &adj[u] {
                let mut next = cur.clone();
                next[u] -= 2;
                next[v] += 1;
                if seen.insert(next.clone()) {
                    queue.push_back((next, k + 1));
                }
            }
        }
    }
    None
}

/// Every vector of `n` counts summing to `m`.
pub fn compositions(n: usize, m: u16) -> Vec<Vec<u16>> {
    if n == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for mut rest in compositions(n - 1, m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Least `m` such that every size-`m` configuration covers `d` after moves.
pub fn pi(adj: &[Vec<usize>], d: &[u16]) -> u64 {
    (0u16..).find(|&m| compositions(adj.len(), m).iter().all(|c| solvable(adj, c, d))).unwrap().into()
}

pub fn target(n: usize, r: usize, t: u16) -> Vec<u16> {
    let mut d = vec![0; n];
    d[r] = t;
    d
}

/// Pebble pairs with no targets: `sum floor(C(v)/2)`.
pub fn pairs(c: &[u16]) -> u64 {
    c.iter().map(|&x| u64::from(x / 2)).sum()
}

/// Maximum number of disjoint potential moves, by trying every split of each
/// target vertex's pebbles into singletons and pairs.
pub fn potential_by_search(c: &[u16], d: &[u16]) -> u64 {
    c.iter().zip(d).map(|(&x, &y)| (0..=x.min(y)).map(|s| u64::from(s) + u64::from((x - s) / 2)).max().unwrap()).sum()
}

/// Chordality by repeatedly deleting a simplicial vertex.
pub fn chordal_by_elimination(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut alive = vec![true; n];
    for _ in 0..n {
        let pick = (0..n).filter(|&v| alive[v]).find(|&v| {
            let nb: Vec<usize> = adj[v].iter().copied().filter(|&w| alive[w]).collect();
            nb.iter().all(|&a| nb.iter().all(|&b| a == b || adj[a].contains(&b)))
        });
        match pick {
            Some(v) => alive[v] = false,
            None => return false,
        }
    }
    true
}
