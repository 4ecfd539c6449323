//! Chordal recognition, pyramid detection, the semi-greedy move restriction,
//! and the pair-shifting transform that pushes unsolvable configurations
//! onto simplicial vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pebbles::{Configuration, Distribution};
use crate::solver::{Engine, MoveRestriction, SolveCertificate, Solver, SolverOptions};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
    pub valid: bool,
}

/// Whether each vertex's neighbors later in `order` are pairwise adjacent.
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    if order.len() != g.n() || pos.contains(&usize::MAX) {
        return false;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        later.iter().enumerate().all(|(i, &a)| later[i + 1..].iter().all(|&b| g.is_adjacent(a, b)))
    })
}

/// Maximum cardinality search: repeatedly number the vertex with the most
/// numbered neighbors (lowest index on ties). The reverse visit order is a
/// perfect elimination order exactly when the graph is chordal.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        done[v] = true;
        visit.push(v);
        for &w in g.neighbors(v) {
            weight[w] += 1;
        }
    }
    visit.reverse();
    visit
}

/// A verified perfect elimination order, or `None` when `g` is not chordal.
pub fn is_chordal(g: &Graph) -> Option<EliminationOrder> {
    let order = maximum_cardinality_search(g);
    is_perfect_elimination_order(g, &order).then_some(EliminationOrder { order, valid: true })
}

/// Whether the six vertices induce the pyramid: a triangle whose three edges
/// each carry one extra vertex adjacent to just that edge's endpoints.
fn induces_pyramid(g: &Graph, s: &[usize; 6]) -> bool {
    let mut deg = [0usize; 6];
    let mut edges = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            if g.is_adjacent(s[i], s[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    if edges != 9 {
        return false;
    }
    let hubs: Vec<usize> = (0..6).filter(|&i| deg[i] == 4).collect();
    let tips: Vec<usize> = (0..6).filter(|&i| deg[i] == 2).collect();
    if hubs.len() != 3 || tips.len() != 3 {
        return false;
    }
    let adj = |a: usize, b: usize| g.is_adjacent(s[a], s[b]);
    let triangle = adj(hubs[0], hubs[1]) && adj(hubs[1], hubs[2]) && adj(hubs[0], hubs[2]);
    // with nine edges, a hub triangle, and degree-2 tips, each tip sees two hubs;
    // the tips must be independent and sit on distinct triangle edges
    let mut pairs: Vec<[bool; 3]> =
        tips.iter().map(|&tip| [adj(tip, hubs[0]), adj(tip, hubs[1]), adj(tip, hubs[2])]).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let independent = !adj(tips[0], tips[1]) && !adj(tips[1], tips[2]) && !adj(tips[0], tips[2]);
    triangle && independent && pairs.len() == 3 && pairs.iter().all(|p| p.iter().filter(|&&x| x).count() == 2)
}

/// Some induced pyramid, as sorted vertices, if one exists.
pub fn find_pyramid(g: &Graph) -> Option<[usize; 6]> {
    let n = g.n();
    if n < 6 {
        return None;
    }
    let mut idx = [0, 1, 2, 3, 4, 5];
    loop {
        if induces_pyramid(g, &idx) {
            return Some(idx);
        }
        // next 6-subset in lexicographic order
        let mut i = 6;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - 6 + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..6 {
            idx[j] = idx[j - 1] + 1;
        }
        if idx[5] >= n {
            return None;
        }
    }
}

pub fn is_pyramid_free(g: &Graph) -> bool {
    find_pyramid(g).is_none()
}

/// The pyramid on vertices `a..f` = 0..5: the 6-cycle plus chords `bd, df, fb`.
pub fn pyramid() -> Graph {
    let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];
    let chords = [(1, 3), (3, 5), (5, 1)];
    let edges: Vec<_> = cycle.iter().chain(&chords).copied().collect();
    Graph::from_edges(6, &edges).expect("pyramid is connected")
}

/// Solvability for one pebble on `r` using only moves that do not increase
/// the moved pebble's distance to `r`.
pub fn semi_greedy_solvable(g: &Graph, c: &Configuration, r: usize) -> Result<SolveCertificate> {
    c.check_len(g.n())?;
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
    }
    let opts = SolverOptions {
        engine: Engine::Moves,
        restriction: MoveRestriction::SemiGreedy { target: r },
        ..SolverOptions::default()
    };
    let solver = Solver::new(g, &Distribution::target(g.n(), r, 1), opts)?;
    Ok(solver.solve(c.counts())?.into_certificate())
}

/// Moves one pebble pair from `v` to `u`.
pub fn shift_potential(c: &Configuration, v: usize, u: usize) -> Result<Configuration> {
    let n = c.len();
    for w in [v, u] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w + 1, n });
        }
    }
    if c.get(v) < 2 {
        return Err(Error::InsufficientPebbles { vertex: v + 1, have: c.get(v).into() });
    }
    let mut next = c.counts().to_vec();
    next[v] -= 2;
    next[u] = next[u].checked_add(2).ok_or(Error::Overflow(16))?;
    Ok(Configuration::new(next))
}

/// Whether deleting `N[v] \ {r, u}` disconnects `r` from `u`.
pub fn separates(g: &Graph, v: usize, r: usize, u: usize) -> bool {
    let mut removed = vec![false; g.n()];
    removed[v] = true;
    for &w in g.neighbors(v) {
        removed[w] = true;
    }
    removed[r] = false;
    removed[u] = false;
    g.bfs(r, &removed)[u] == u32::MAX
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplicialized {
    pub configuration: Configuration,
    /// Applied shifts `(from, to)`, 0-indexed.
    pub shifts: Vec<(usize, usize)>,
    /// The subset of `shifts` from a vertex adjacent to `r`, where no
    /// separated target exists; each was accepted only after the solver
    /// confirmed the result is still unsolvable.
    pub checked_shifts: Vec<(usize, usize)>,
    /// Oracle verdict on the result.
    pub unsolvable: bool,
}

/// Shifts pebble pairs off non-simplicial vertices until every vertex other
/// than `r` holding two or more pebbles is simplicial. Each shift goes to the
/// lowest-index simplicial `u` that `N[v] \ {r, u}` separates from `r`.
/// When `v` is adjacent to `r` no such `u` need exist; the pair then goes to
/// the lowest-index simplicial `u` for which the solver confirms the shifted
/// configuration is still unsolvable.
pub fn simplicialize_unsolvable(g: &Graph, c: &Configuration, r: usize, t: u16) -> Result<Simplicialized> {
    c.check_len(g.n())?;
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
    }
    if is_chordal(g).is_none() {
        return Err(Error::Precondition("graph is not chordal".into()));
    }
    let solver = Solver::new(g, &Distribution::target(g.n(), r, t), SolverOptions::default())?;
    if solver.is_solvable(c.counts())? {
        return Err(Error::Precondition(format!("configuration {c} is solvable")));
    }
    let simplicial: Vec<bool> = (0..g.n()).map(|v| g.is_simplicial(v)).collect();
    let mut cur = c.clone();
    let mut shifts = Vec::new();
    let mut checked_shifts = Vec::new();
    while let Some(v) = (0..g.n()).find(|&v| v != r && cur.get(v) >= 2 && !simplicial[v]) {
        let candidates = || (0..g.n()).filter(|&u| u != r && u != v && simplicial[u]);
        if let Some(u) = candidates().find(|&u| separates(g, v, r, u)) {
            cur = shift_potential(&cur, v, u)?;
            shifts.push((v, u));
            continue;
        }
        if !g.is_adjacent(v, r) {
            return Err(Error::Precondition(format!(
                "no simplicial vertex is separated from v{} by N[v{}]",
                r + 1,
                v + 1
            )));
        }
        let mut next = None;
        for u in candidates() {
            let shifted = shift_potential(&cur, v, u)?;
            if !solver.is_solvable(shifted.counts())? {
                next = Some((u, shifted));
                break;
            }
        }
        let (u, shifted) = next.ok_or_else(|| {
            Error::Precondition(format!("every shift of v{} to a simplicial vertex becomes solvable", v + 1))
        })?;
        cur = shifted;
        shifts.push((v, u));
        checked_shifts.push((v, u));
    }
    let unsolvable = !solver.is_solvable(cur.counts())?;
    Ok(Simplicialized { configuration: cur, shifts, checked_shifts, unsolvable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordality() {
        let g = Graph::path_power(5, 2).unwrap();
        let peo = is_chordal(&g).unwrap();
        assert!(is_perfect_elimination_order(&g, &peo.order));
        assert!(is_chordal(&Graph::cycle(4).unwrap()).is_none());
        assert!(is_chordal(&Graph::tree(&[(1, 2), (1, 3), (3, 4)]).unwrap()).is_some());
        assert!(is_chordal(&pyramid()).is_some());
    }

    #[test]
    fn pyramids() {
        assert!(!is_pyramid_free(&pyramid()));
        assert!(is_pyramid_free(&Graph::complete(6).unwrap()));
        for n in 1..=8 {
            for k in 1..=4 {
                assert!(is_pyramid_free(&Graph::path_power(n, k).unwrap()));
            }
        }
        // a pyramid with a pendant vertex keeps its induced copy
        let mut edges = pyramid().edges();
        edges.push((0, 6));
        let g = Graph::from_edges(7, &edges).unwrap();
        assert_eq!(find_pyramid(&g), Some([0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn shifts() {
        let c = Configuration::new(vec![2, 0, 0]);
        assert_eq!(shift_potential(&c, 0, 2).unwrap().counts(), &[0, 0, 2]);
        let c = Configuration::new(vec![5, 1, 0]);
        assert_eq!(shift_potential(&c, 0, 1).unwrap().counts(), &[3, 3, 0]);
        assert!(shift_potential(&Configuration::new(vec![1, 0, 0]), 0, 1).is_err());
    }

    #[test]
    fn simplicialize() {
        let g = Graph::path_power(5, 2).unwrap();
        let out = simplicialize_unsolvable(&g, &Configuration::new(vec![0, 0, 0, 3, 0]), 0, 1).unwrap();
        assert_eq!(out.configuration.counts(), &[0, 0, 0, 1, 2]);
        assert_eq!(out.shifts, vec![(3, 4)]);
        assert!(out.unsolvable);
        let fixed = Configuration::new(vec![0, 1, 1, 1, 1]);
        let out = simplicialize_unsolvable(&g, &fixed, 0, 1).unwrap();
        assert_eq!(out.configuration, fixed);
        let p3 = Graph::path(3).unwrap();
        assert!(matches!(
            simplicialize_unsolvable(&p3, &Configuration::new(vec![0, 2, 0]), 0, 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            simplicialize_unsolvable(&Graph::cycle(4).unwrap(), &Configuration::new(vec![0, 1, 1, 1]), 0, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn semi_greedy_basics() {
        let p3 = Graph::path(3).unwrap();
        assert!(semi_greedy_solvable(&p3, &Configuration::new(vec![4, 0, 0]), 2).unwrap().solvable);
    }
}
