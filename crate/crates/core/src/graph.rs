//! Undirected simple connected graphs, the generators used throughout the
//! crate, and all-pairs hop metrics.
//!
//! Vertices are `0..n` in the Rust API. Every textual surface (parsers,
//! printers, JSON) uses the 1-indexed labels `v1..vn`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graphs with at most this many vertices also carry per-vertex adjacency bitsets.
pub const BITSET_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    bits: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Simplicial,
    Interior,
}

impl Graph {
    /// Builds a graph from 0-indexed edges. Duplicate edges are merged;
    /// self-loops and disconnected vertex sets are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u + 1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let bits = (n <= BITSET_CAP)
            .then(|| adj.iter().map(|list| list.iter().fold(0u64, |acc, &v| acc | (1u64 << v))).collect());
        let g = Graph { n, adj, bits };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// `P_n^(k)`: `v_i ~ v_j` whenever `1 <= |i - j| <= k`.
    pub fn path_power(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameter(format!("path power needs n >= 1 and k >= 1 (got n={n}, k={k})")));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n.min(i + k + 1) {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::path_power(n, 1)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
        }
        Graph::path_power(n, n.max(2) - 1)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3 (got {n})")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Builds a tree from 1-indexed edges; the vertex count is the largest label.
    pub fn tree(edges: &[(usize, usize)]) -> Result<Self> {
        let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(1);
        if edges.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(Error::InvalidParameter("vertex labels start at 1".into()));
        }
        let zero: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let g = Graph::from_edges(n, &zero)?;
        if !g.is_tree() {
            return Err(Error::Cyclic);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        match &self.bits {
            Some(bits) => bits[u] >> v & 1 == 1,
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Neighborhood bitset, available when `n <= BITSET_CAP`.
    pub fn neighbor_bits(&self, v: usize) -> Option<u64> {
        self.bits.as_ref().map(|b| b[v])
    }

    /// Edges as 0-indexed pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n
    }

    /// The graph with edge `uv` deleted; fails if that disconnects it.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.is_adjacent(u, v) {
            return Err(Error::NotAdjacent(u + 1, v + 1));
        }
        let edges: Vec<_> = self.edges().into_iter().filter(|&e| e != (u.min(v), u.max(v))).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Hop distances from `src`; `u32::MAX` marks vertices in `removed` or unreachable ones.
    pub fn bfs(&self, src: usize, removed: &[bool]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        if removed.get(src).copied().unwrap_or(false) {
            return dist;
        }
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX && !removed.get(v).copied().unwrap_or(false) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn is_connected(&self) -> bool {
        self.bfs(0, &[]).iter().all(|&d| d != u32::MAX)
    }

    pub fn is_simplicial(&self, v: usize) -> bool {
        let nb = &self.adj[v];
        nb.iter().enumerate().all(|(i, &a)| nb[i + 1..].iter().all(|&b| self.is_adjacent(a, b)))
    }

    pub fn classify_vertices(&self) -> Vec<VertexKind> {
        (0..self.n).map(|v| if self.is_simplicial(v) { VertexKind::Simplicial } else { VertexKind::Interior }).collect()
    }

    pub fn simplicial_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_simplicial(v)).collect()
    }

    pub fn metric(&self) -> Metric {
        let dist: Vec<Vec<u32>> = (0..self.n).map(|v| self.bfs(v, &[])).collect();
        let ecc: Vec<u32> = dist.iter().map(|row| *row.iter().max().unwrap()).collect();
        let diam = *ecc.iter().max().unwrap();
        Metric { dist, diam, ecc }
    }
}

/// All-pairs hop distances with diameter and eccentricities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    pub dist: Vec<Vec<u32>>,
    pub diam: u32,
    pub ecc: Vec<u32>,
}

impl Metric {
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }
}
