//! Small exhaustive corpora: non-isomorphic trees and connected graphs.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Decodes a Prüfer sequence over `0..n` into tree edges.
fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Rooted canonical encoding of the subtree at `v`.
fn encode(g: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| encode(g, w, v)).collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

/// An isomorphism invariant of a tree that separates non-isomorphic trees,
/// taken at the center (the smaller encoding when there are two centers).
pub fn tree_canonical_form(g: &Graph) -> String {
    let ecc = g.metric().ecc;
    let radius = *ecc.iter().min().expect("nonempty");
    (0..g.n()).filter(|&v| ecc[v] == radius).map(|c| encode(g, c, usize::MAX)).min().expect("a center exists")
}

/// One representative of every isomorphism class of trees on `n` vertices,
/// ordered by canonical form.
pub fn trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::from_edges(1, &[]).expect("single vertex")],
        2 => return vec![Graph::path(2).expect("edge")],
        _ => {}
    }
    let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let g = Graph::from_edges(n, &prufer_edges(&seq, n)).expect("Prüfer sequences decode to trees");
        classes.entry(tree_canonical_form(&g)).or_insert(g);
        // odometer over [0, n)^(n-2)
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    classes.into_values().collect()
}

/// Visits every permutation of `0..n`.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    fn go(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, f);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    go(0, &mut perm, &mut f);
}

/// Upper-triangle edge bits of `g` relabelled by `perm`.
fn edge_code(edges: &[(usize, usize)], n: usize, perm: &[usize]) -> u64 {
    let slot = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << slot(perm[u], perm[v]))
}

/// The smallest edge code over all relabellings; equal exactly for isomorphic graphs.
/// Intended for `n <= 8`.
pub fn graph_canonical_form(g: &Graph) -> u64 {
    let edges = g.edges();
    let mut best = u64::MAX;
    for_each_permutation(g.n(), |perm| best = best.min(edge_code(&edges, g.n(), perm)));
    best
}

/// One representative of every isomorphism class of connected graphs on `n <= 6` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "connected_graphs is exhaustive and limited to n <= 6");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut classes: BTreeMap<u64, Graph> = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<_> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            let code = graph_canonical_form(&g);
            classes.entry(code).or_insert(g);
        }
    }
    classes.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11]);
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn canonical_forms_ignore_labels() {
        let a = Graph::tree(&[(1, 2), (2, 3), (2, 4)]).unwrap();
        let b = Graph::tree(&[(4, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree_canonical_form(&a), tree_canonical_form(&b));
        assert_eq!(graph_canonical_form(&a), graph_canonical_form(&b));
        assert_ne!(graph_canonical_form(&a), graph_canonical_form(&Graph::path(4).unwrap()));
    }
}
