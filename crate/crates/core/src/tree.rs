//! Maximum rooted path partitions of trees and the resulting closed form
//! `pi_t(T, r) = t 2^{a_1} + sum_{i >= 2} 2^{a_i} - l + 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pebbles::Distribution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPartition {
    pub root: usize,
    /// Each path starts at its anchor, a vertex covered before it.
    pub paths: Vec<Vec<usize>>,
}

impl PathPartition {
    /// Path lengths in edges, non-increasing.
    pub fn lengths(&self) -> Vec<u32> {
        self.paths.iter().map(|p| p.len() as u32 - 1).collect()
    }
}

fn require_tree(g: &Graph) -> Result<()> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(Error::Cyclic)
    }
}

fn check_vertex(g: &Graph, r: usize) -> Result<()> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
    }
    Ok(())
}

/// Greedy partition: repeatedly take a longest path of unused edges with one
/// end in the covered set, breaking ties by the smallest vertex sequence.
pub fn max_path_partition(t: &Graph, r: usize) -> Result<PathPartition> {
    require_tree(t)?;
    check_vertex(t, r)?;
    let n = t.n();
    let mut covered = vec![false; n];
    covered[r] = true;
    // In a tree, the unused edges hanging off the covered set are exactly the
    // edges into uncovered vertices, so walks from covered vertices stay simple.
    let mut paths = Vec::new();
    while covered.iter().any(|&c| !c) {
        let mut best: Option<Vec<usize>> = None;
        for anchor in (0..n).filter(|&v| covered[v]) {
            let mut stack = vec![vec![anchor]];
            while let Some(path) = stack.pop() {
                let end = *path.last().expect("nonempty");
                let mut extended = false;
                for &next in t.neighbors(end) {
                    if !covered[next] && !path.contains(&next) {
                        let mut longer = path.clone();
                        longer.push(next);
                        stack.push(longer);
                        extended = true;
                    }
                }
                if !extended && path.len() > 1 {
                    let better = match &best {
                        None => true,
                        Some(b) => path.len() > b.len() || (path.len() == b.len() && path < *b),
                    };
                    if better {
                        best = Some(path);
                    }
                }
            }
        }
        let path = best.expect("an uncovered vertex is adjacent to the covered subtree");
        for &v in &path {
            covered[v] = true;
        }
        paths.push(path);
    }
    Ok(PathPartition { root: r, paths })
}

/// Evaluates `t 2^{a_1} + sum_{i >= 2} 2^{a_i} - l + 1`; an empty partition gives `t`.
pub fn formula_from_lengths(lengths: &[u32], t: u64) -> Result<u64> {
    let overflow = || Error::ArithmeticOverflow("tree formula".into());
    let Some((&a1, rest)) = lengths.split_first() else {
        return Ok(t);
    };
    let pow = |a: u32| 1u64.checked_shl(a).filter(|_| a < 64).ok_or_else(overflow);
    let mut total = t.checked_mul(pow(a1)?).ok_or_else(overflow)?;
    for &a in rest {
        total = total.checked_add(pow(a)?).ok_or_else(overflow)?;
    }
    Ok(total - lengths.len() as u64 + 1)
}

/// `pi_t(T, r)`.
pub fn tree_pi(t: &Graph, r: usize, fold: u64) -> Result<u64> {
    if fold == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    formula_from_lengths(&max_path_partition(t, r)?.lengths(), fold)
}

/// The lexicographically first endpoint pair of a longest path, smaller endpoint first.
pub fn longest_path_ends(t: &Graph) -> Result<(usize, usize)> {
    require_tree(t)?;
    let m = t.metric();
    let mut best = (0, 0);
    for u in 0..t.n() {
        for v in u + 1..t.n() {
            if m.dist(u, v) > m.dist(best.0, best.1) {
                best = (u, v);
            }
        }
    }
    Ok(best)
}

/// `pi_t(T)`, evaluated at an end of a longest path.
pub fn tree_pi_global(t: &Graph, fold: u64) -> Result<u64> {
    tree_pi(t, longest_path_ends(t)?.0, fold)
}

/// `pi_t(T, r)` for every root `r`; its maximum should equal [`tree_pi_global`].
pub fn tree_pi_all(t: &Graph, fold: u64) -> Result<Vec<u64>> {
    (0..t.n()).map(|r| tree_pi(t, r, fold)).collect()
}

/// The proven upper bound `pi_{|D|}(T) - s(D) + 1` on `pi(T, D)`.
pub fn strong_target_bound_tree(t: &Graph, d: &Distribution) -> Result<u64> {
    d.check_len(t.n())?;
    if d.size() == 0 {
        return Err(Error::InvalidParameter("distribution must demand at least one pebble".into()));
    }
    Ok(tree_pi_global(t, d.size())? - d.support_size() as u64 + 1)
}

pub fn leaf_count(t: &Graph) -> usize {
    (0..t.n()).filter(|&v| t.degree(v) == 1).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> Graph {
        Graph::tree(&[(1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn partitions() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(max_path_partition(&p4, 0).unwrap().lengths(), vec![3]);
        assert_eq!(max_path_partition(&p4, 1).unwrap().lengths(), vec![2, 1]);
        let part = max_path_partition(&star(), 1).unwrap();
        assert_eq!(part.paths, vec![vec![1, 0, 2], vec![0, 3]]);
    }

    #[test]
    fn formula_values() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(tree_pi(&p4, 0, 1).unwrap(), 8);
        assert_eq!(tree_pi(&star(), 1, 1).unwrap(), 5);
        let p2 = Graph::path(2).unwrap();
        assert_eq!(tree_pi(&p2, 0, 3).unwrap(), 6);
        assert_eq!(tree_pi_global(&p4, 1).unwrap(), 8);
        assert_eq!(tree_pi_global(&p2, 1).unwrap(), 2);
        assert_eq!(tree_pi(&Graph::path(1).unwrap(), 0, 2).unwrap(), 2);
    }

    #[test]
    fn strong_target_bounds() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(strong_target_bound_tree(&p4, &Distribution::new(vec![1, 0, 0, 1])).unwrap(), 15);
        let p2 = Graph::path(2).unwrap();
        assert_eq!(strong_target_bound_tree(&p2, &Distribution::new(vec![2, 0])).unwrap(), 4);
    }

    #[test]
    fn rejects_non_trees() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(tree_pi(&c4, 0, 1), Err(Error::Cyclic));
    }
}
