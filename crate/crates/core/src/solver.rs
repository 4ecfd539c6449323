//! Exact D-solvability: memoized depth-first search over the configuration
//! graph, and a breadth-first variant for minimum-move solutions.
//!
//! Two engines decide solvability. [`Engine::Moves`] searches single
//! pebbling steps. [`Engine::Firing`] searches whole vertex firings: a vertex
//! fires once, sending every pebble pair it can spare to neighbors that have
//! not fired yet. The firing search is complete because the step counts of
//! any solution can be stripped of directed cycles (each cancelled cycle
//! leaves every vertex one pebble richer) and the remaining acyclic steps run
//! in topological order; sending more than a solution does only adds pebbles
//! to vertices that have yet to act.
//!
//! Every pebbling step burns one pebble, so the configuration graph is a DAG
//! of depth at most `|C|` and the visited set never needs cycle handling.
//! Two pruning rules cut dead states; both are sound at every state:
//!
//! * potential: fewer disjoint potential moves than demanded targets;
//! * weight: for some target `u`, `sum_v C(v) 2^-dist(v,u) < D(u)`. That sum
//!   never increases under a move and is at least `C(u)` at the end.

use std::collections::hash_map::Entry;
use std::hash::Hash;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Metric};
use crate::pebbles::{vertex_potential, Configuration, Distribution};

/// A pebbling step between 0-indexed vertices. Serializes as the 1-indexed pair `[from, to]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: usize,
    pub to: usize,
}

impl Serialize for Move {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.from + 1, self.to + 1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        if a == 0 || b == 0 {
            return Err(de::Error::custom("vertex labels start at 1"));
        }
        Ok(Move { from: a - 1, to: b - 1 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum UnsolvableReason {
    ReachableSetExhausted {
        states: u64,
    },
    PotentialBound {
        potential: u64,
        demand: u64,
    },
    /// `weight / 2^scale` is the distance-discounted pebble mass seen from `target` (1-indexed).
    WeightBound {
        target: usize,
        weight: u128,
        scale: u32,
        demand: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveCertificate {
    pub solvable: bool,
    pub moves: Option<Vec<Move>>,
    pub reason: Option<UnsolvableReason>,
}

impl SolveCertificate {
    /// Replays the moves from `c` and checks the result dominates `d`.
    pub fn verify(&self, g: &Graph, c: &Configuration, d: &Distribution) -> Result<bool> {
        if !self.solvable {
            return Ok(false);
        }
        let mut cur = c.clone();
        for m in self.moves.iter().flatten() {
            cur = cur.apply_move(g, m.from, m.to)?;
        }
        Ok(cur.dominates(d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MoveRestriction {
    #[default]
    Unrestricted,
    /// Only moves `u -> v` with `dist(v, r) <= dist(u, r)`.
    SemiGreedy { target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Firing,
    Moves,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Firing needs `n <= 64` and no move cap; otherwise the move engine runs.
    pub engine: Engine,
    pub potential_prune: bool,
    pub weight_prune: bool,
    pub restriction: MoveRestriction,
    /// Search only move sequences of at most this length.
    pub max_moves: Option<u64>,
    /// Abort a single query after visiting this many states.
    pub state_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            engine: Engine::Firing,
            potential_prune: true,
            weight_prune: true,
            restriction: MoveRestriction::Unrestricted,
            max_moves: None,
            state_limit: 20_000_000,
        }
    }
}

impl SolverOptions {
    pub fn unpruned() -> Self {
        SolverOptions { potential_prune: false, weight_prune: false, ..Self::default() }
    }
}

/// Largest distance scale used for the weight rule; beyond it the rule is skipped for that target.
const MAX_WEIGHT_SCALE: u32 = 96;

struct WeightTable {
    target: usize,
    scale: u32,
    per_vertex: Vec<u128>,
    threshold: u128,
}

/// A graph and distribution with everything the search needs precomputed.
pub struct Solver<'g> {
    graph: &'g Graph,
    metric: Metric,
    demand: Vec<u16>,
    demand_total: u64,
    /// Sources in the order moves are tried.
    sources: Vec<usize>,
    /// Per source, the allowed destinations in the order they are tried.
    dests: Vec<Vec<usize>>,
    weights: Vec<WeightTable>,
    opts: SolverOptions,
}

/// Incrementally maintained search state.
struct State<'s> {
    counts: Vec<u16>,
    potential: u64,
    deficit: u64,
    weight: Vec<u128>,
    solver: &'s Solver<'s>,
}

impl<'s> State<'s> {
    fn new(solver: &'s Solver<'s>, counts: &[u16]) -> Self {
        let d = &solver.demand;
        let potential = crate::pebbles::potential(counts, d);
        let deficit = counts.iter().zip(d).map(|(&c, &t)| u64::from(t.saturating_sub(c))).sum();
        let weight = solver
            .weights
            .iter()
            .map(|w| counts.iter().zip(&w.per_vertex).map(|(&c, &x)| u128::from(c) * x).sum())
            .collect();
        State { counts: counts.to_vec(), potential, deficit, weight, solver }
    }

    #[inline]
    fn vertex_terms(&self, v: usize) -> (u64, u64) {
        let (c, t) = (self.counts[v], self.solver.demand[v]);
        (vertex_potential(c, t), u64::from(t.saturating_sub(c)))
    }

    #[inline]
    fn shift(&mut self, u: usize, v: usize, forward: bool) {
        let (pu, du) = self.vertex_terms(u);
        let (pv, dv) = self.vertex_terms(v);
        self.potential -= pu + pv;
        self.deficit -= du + dv;
        if forward {
            self.counts[u] -= 2;
            self.counts[v] += 1;
        } else {
            self.counts[u] += 2;
            self.counts[v] -= 1;
        }
        let (pu, du) = self.vertex_terms(u);
        let (pv, dv) = self.vertex_terms(v);
        self.potential += pu + pv;
        self.deficit += du + dv;
        for (w, table) in self.weight.iter_mut().zip(&self.solver.weights) {
            if forward {
                *w = *w + table.per_vertex[v] - 2 * table.per_vertex[u];
            } else {
                *w = *w + 2 * table.per_vertex[u] - table.per_vertex[v];
            }
        }
    }

    fn solved(&self) -> bool {
        self.deficit == 0
    }

    fn dead(&self) -> Option<UnsolvableReason> {
        let s = self.solver;
        if s.opts.potential_prune && self.potential < s.demand_total {
            return Some(UnsolvableReason::PotentialBound { potential: self.potential, demand: s.demand_total });
        }
        if s.opts.weight_prune {
            for (w, table) in self.weight.iter().zip(&s.weights) {
                if *w < table.threshold {
                    return Some(UnsolvableReason::WeightBound {
                        target: table.target + 1,
                        weight: *w,
                        scale: table.scale,
                        demand: u64::from(s.demand[table.target]),
                    });
                }
            }
        }
        None
    }

    fn size(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }
}

/// Packs a count vector into a hash key.
trait Packer {
    type Key: Hash + Eq + Clone;
    fn pack(&self, counts: &[u16]) -> Self::Key;
}

struct WidePacker {
    bits: u32,
}

impl Packer for WidePacker {
    type Key = u128;
    #[inline]
    fn pack(&self, counts: &[u16]) -> u128 {
        counts.iter().fold(0u128, |acc, &c| acc << self.bits | u128::from(c))
    }
}

struct VecPacker;

impl Packer for VecPacker {
    type Key = Box<[u16]>;
    fn pack(&self, counts: &[u16]) -> Box<[u16]> {
        counts.into()
    }
}

fn bit_length(x: u64) -> u32 {
    u64::BITS - x.leading_zeros()
}

/// Outcome of a boolean solvability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Solvable(Vec<Move>),
    Unsolvable(UnsolvableReason),
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable(_))
    }

    pub fn into_certificate(self) -> SolveCertificate {
        match self {
            Verdict::Solvable(moves) => SolveCertificate { solvable: true, moves: Some(moves), reason: None },
            Verdict::Unsolvable(reason) => SolveCertificate { solvable: false, moves: None, reason: Some(reason) },
        }
    }
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph, d: &Distribution, opts: SolverOptions) -> Result<Self> {
        d.check_len(graph.n())?;
        let metric = graph.metric();
        Self::with_metric(graph, metric, d, opts)
    }

    pub fn with_metric(graph: &'g Graph, metric: Metric, d: &Distribution, opts: SolverOptions) -> Result<Self> {
        d.check_len(graph.n())?;
        let n = graph.n();
        if let MoveRestriction::SemiGreedy { target } = opts.restriction {
            if target >= n {
                return Err(Error::VertexOutOfRange { vertex: target + 1, n });
            }
        }
        let targets: Vec<usize> = d.support().collect();
        // distance to the nearest target drives move ordering
        let near: Vec<u32> = (0..n).map(|v| targets.iter().map(|&t| metric.dist(v, t)).min().unwrap_or(0)).collect();
        let mut sources: Vec<usize> = (0..n).collect();
        sources.sort_by_key(|&v| (near[v], v));
        let dests = (0..n)
            .map(|u| {
                let mut list: Vec<usize> = graph
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| match opts.restriction {
                        MoveRestriction::Unrestricted => true,
                        MoveRestriction::SemiGreedy { target } => metric.dist(v, target) <= metric.dist(u, target),
                    })
                    .collect();
                list.sort_by_key(|&v| (near[v], v));
                list
            })
            .collect();
        let weights = targets
            .iter()
            .filter_map(|&t| {
                let scale = metric.ecc[t];
                (scale <= MAX_WEIGHT_SCALE).then(|| WeightTable {
                    target: t,
                    scale,
                    per_vertex: (0..n).map(|v| 1u128 << (scale - metric.dist(v, t))).collect(),
                    threshold: u128::from(d.get(t)) << scale,
                })
            })
            .collect();
        Ok(Solver { graph, demand: d.counts().to_vec(), demand_total: d.size(), metric, sources, dests, weights, opts })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn demand(&self) -> &[u16] {
        &self.demand
    }

    pub fn options(&self) -> &SolverOptions {
        &self.opts
    }

    fn check(&self, c: &[u16]) -> Result<()> {
        if c.len() != self.graph.n() {
            return Err(Error::LengthMismatch { expected: self.graph.n(), got: c.len() });
        }
        Ok(())
    }

    /// Decides solvability; a solvable verdict carries a replayable move list.
    pub fn solve(&self, c: &[u16]) -> Result<Verdict> {
        self.solve_with_dead(c, &mut NoDeadCache)
    }

    /// Like [`Solver::solve`], sharing proven-dead states with other queries on this solver.
    pub fn solve_cached(&self, c: &[u16], cache: &mut DeadCache) -> Result<Verdict> {
        self.solve_with_dead(c, cache)
    }

    fn solve_with_dead<D: DeadStore>(&self, c: &[u16], dead: &mut D) -> Result<Verdict> {
        self.check(c)?;
        let state = State::new(self, c);
        if state.solved() {
            return Ok(Verdict::Solvable(Vec::new()));
        }
        if let Some(reason) = state.dead() {
            return Ok(Verdict::Unsolvable(reason));
        }
        if self.opts.engine == Engine::Firing && self.opts.max_moves.is_none() && c.len() <= 64 {
            return Firing::new(self, dead).run(c);
        }
        let total = state.size();
        let bits = bit_length(total).max(1);
        if bits as usize * c.len() <= 128 {
            self.dfs(state, &WidePacker { bits }, dead)
        } else {
            self.dfs(state, &VecPacker, dead)
        }
    }

    fn dfs<P: Packer, D: DeadStore>(&self, mut state: State<'_>, packer: &P, dead: &mut D) -> Result<Verdict> {
        let start_size = state.size();
        let depth_cap = self.opts.max_moves.unwrap_or(u64::MAX);
        // a depth cap makes "unsolvable" query-relative, so nothing may be shared
        let share = self.opts.max_moves.is_none();
        let mut visited: FxHashSet<P::Key> = FxHashSet::default();
        let root = packer.pack(&state.counts);
        if dead.is_dead(&state.counts) {
            return Ok(Verdict::Unsolvable(UnsolvableReason::ReachableSetExhausted { states: 0 }));
        }
        visited.insert(root);
        // (source index, destination index) cursor per open frame
        let mut frames: Vec<(usize, usize)> = vec![(0, 0)];
        let mut path: Vec<Move> = Vec::new();
        let n_src = self.sources.len();
        while let Some(frame) = frames.last_mut() {
            let depth = path.len() as u64;
            let mut next = None;
            if depth < depth_cap {
                while frame.0 < n_src {
                    let u = self.sources[frame.0];
                    if state.counts[u] >= 2 {
                        let dests = &self.dests[u];
                        if frame.1 < dests.len() {
                            next = Some(Move { from: u, to: dests[frame.1] });
                            frame.1 += 1;
                            break;
                        }
                    }
                    frame.0 += 1;
                    frame.1 = 0;
                }
            }
            match next {
                None => {
                    frames.pop();
                    if frames.is_empty() {
                        break;
                    }
                    if share {
                        dead.mark(&state.counts);
                    }
                    let m = path.pop().expect("path tracks frames");
                    state.shift(m.from, m.to, false);
                }
                Some(m) => {
                    state.shift(m.from, m.to, true);
                    if state.solved() {
                        path.push(m);
                        return Ok(Verdict::Solvable(path));
                    }
                    if state.dead().is_some()
                        || dead.is_dead(&state.counts)
                        || !visited.insert(packer.pack(&state.counts))
                    {
                        state.shift(m.from, m.to, false);
                        continue;
                    }
                    if visited.len() > self.opts.state_limit {
                        return Err(Error::StateLimit(self.opts.state_limit));
                    }
                    path.push(m);
                    frames.push((0, 0));
                }
            }
        }
        debug_assert_eq!(state.size(), start_size);
        if share {
            dead.mark(&state.counts);
        }
        Ok(Verdict::Unsolvable(UnsolvableReason::ReachableSetExhausted { states: visited.len() as u64 }))
    }

    pub fn is_solvable(&self, c: &[u16]) -> Result<bool> {
        Ok(self.solve(c)?.is_solvable())
    }

    /// Fewest moves reaching a configuration that dominates the demand, by
    /// breadth-first search over move-count layers.
    pub fn min_moves(&self, c: &[u16]) -> Result<Option<Vec<Move>>> {
        self.check(c)?;
        let root = State::new(self, c);
        if root.solved() {
            return Ok(Some(Vec::new()));
        }
        if root.dead().is_some() {
            return Ok(None);
        }
        let depth_cap = self.opts.max_moves.unwrap_or(u64::MAX);
        // arena of (state counts, parent index, move into it)
        let mut arena: Vec<(Box<[u16]>, usize, Option<Move>)> = vec![(c.into(), usize::MAX, None)];
        let mut layer: Vec<usize> = vec![0];
        let mut depth = 0u64;
        let mut state = root;
        while !layer.is_empty() && depth < depth_cap {
            let mut seen: FxHashMap<Box<[u16]>, ()> = FxHashMap::default();
            let mut next_layer = Vec::new();
            for &idx in &layer {
                state.counts.copy_from_slice(&arena[idx].0);
                let fresh = State::new(self, &arena[idx].0);
                state.potential = fresh.potential;
                state.deficit = fresh.deficit;
                state.weight = fresh.weight;
                for &u in &self.sources {
                    if state.counts[u] < 2 {
                        continue;
                    }
                    for &v in &self.dests[u] {
                        state.shift(u, v, true);
                        let m = Move { from: u, to: v };
                        if state.solved() {
                            let mut moves = vec![m];
                            let mut at = idx;
                            while let (_, parent, Some(pm)) = &arena[at] {
                                moves.push(*pm);
                                at = *parent;
                            }
                            moves.reverse();
                            return Ok(Some(moves));
                        }
                        if state.dead().is_none() {
                            if let Entry::Vacant(e) = seen.entry(state.counts.clone().into()) {
                                e.insert(());
                                arena.push((state.counts.clone().into(), idx, Some(m)));
                                next_layer.push(arena.len() - 1);
                                if arena.len() > self.opts.state_limit {
                                    return Err(Error::StateLimit(self.opts.state_limit));
                                }
                            }
                        }
                        state.shift(u, v, false);
                    }
                }
            }
            layer = next_layer;
            depth += 1;
        }
        Ok(None)
    }
}

/// Firing-order search state shared by the recursion.
struct Firing<'s, 'g, D> {
    solver: &'s Solver<'g>,
    dead: &'s mut D,
    visited: FxHashSet<Box<[u16]>>,
    path: Vec<Move>,
    key: Vec<u16>,
    dist: Vec<u32>,
    queue: Vec<usize>,
}

impl<'s, 'g, D: DeadStore> Firing<'s, 'g, D> {
    fn new(solver: &'s Solver<'g>, dead: &'s mut D) -> Self {
        let n = solver.graph.n();
        Firing {
            solver,
            dead,
            visited: FxHashSet::default(),
            path: Vec::new(),
            key: Vec::with_capacity(n + 4),
            dist: vec![0; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn run(mut self, c: &[u16]) -> Result<Verdict> {
        let mut counts = c.to_vec();
        if self.search(&mut counts, 0)? {
            return Ok(Verdict::Solvable(std::mem::take(&mut self.path)));
        }
        Ok(Verdict::Unsolvable(UnsolvableReason::ReachableSetExhausted { states: self.visited.len() as u64 }))
    }

    fn pack(&mut self, counts: &[u16], fired: u64) {
        self.key.clear();
        self.key.extend_from_slice(counts);
        self.key.extend((0..4).map(|i| (fired >> (16 * i)) as u16));
    }

    /// Whether some demand can no longer be met. Pebbles on fired vertices
    /// are frozen, and live pebbles travel only through unfired vertices.
    fn hopeless(&mut self, counts: &[u16], fired: u64) -> bool {
        let s = self.solver;
        let live = |v: usize| fired >> v & 1 == 0;
        if s.opts.potential_prune {
            let pot: u64 = (0..counts.len())
                .map(|v| {
                    if live(v) {
                        vertex_potential(counts[v], s.demand[v])
                    } else {
                        u64::from(counts[v].min(s.demand[v]))
                    }
                })
                .sum();
            if pot < s.demand_total {
                return true;
            }
        }
        if s.opts.weight_prune {
            let g = s.graph;
            for (u, &need) in s.demand.iter().enumerate() {
                if need == 0 || !live(u) || counts[u] >= need {
                    continue;
                }
                // 2^-dist weights in units of 2^-64; every live distance is below 64
                self.dist.fill(u32::MAX);
                self.dist[u] = 0;
                self.queue.clear();
                self.queue.push(u);
                let mut head = 0;
                let mut weight: u128 = u128::from(counts[u]) << 64;
                let threshold = u128::from(need) << 64;
                while head < self.queue.len() && weight < threshold {
                    let x = self.queue[head];
                    head += 1;
                    for &y in g.neighbors(x) {
                        if self.dist[y] == u32::MAX && live(y) {
                            self.dist[y] = self.dist[x] + 1;
                            weight += u128::from(counts[y]) << (64 - self.dist[y]);
                            self.queue.push(y);
                        }
                    }
                }
                if weight < threshold {
                    return true;
                }
            }
        }
        false
    }

    fn search(&mut self, counts: &mut Vec<u16>, fired: u64) -> Result<bool> {
        let s = self.solver;
        if counts.iter().zip(&s.demand).all(|(c, d)| c >= d) {
            return Ok(true);
        }
        if self.hopeless(counts, fired) {
            return Ok(false);
        }
        self.pack(counts, fired);
        if self.dead.is_dead(&self.key) || self.visited.contains(self.key.as_slice()) {
            return Ok(false);
        }
        let key: Box<[u16]> = self.key.as_slice().into();
        self.visited.insert(key.clone());
        if self.visited.len() > s.opts.state_limit {
            return Err(Error::StateLimit(s.opts.state_limit));
        }
        let mut outs: Vec<usize> = Vec::new();
        for &v in &s.sources {
            if fired >> v & 1 == 1 || counts[v] < s.demand[v] {
                continue;
            }
            let spare = (counts[v] - s.demand[v]) / 2;
            if spare == 0 {
                continue;
            }
            outs.clear();
            outs.extend(s.dests[v].iter().copied().filter(|&w| fired >> w & 1 == 0));
            if outs.is_empty() {
                continue;
            }
            let next_fired = fired | 1 << v;
            counts[v] -= 2 * spare;
            let mut split = vec![0u16; outs.len()];
            split[0] = spare;
            let base = self.path.len();
            loop {
                for (&w, &x) in outs.iter().zip(&split) {
                    counts[w] = counts[w].checked_add(x).ok_or(Error::Overflow(16))?;
                    self.path.extend(std::iter::repeat_n(Move { from: v, to: w }, x.into()));
                }
                let solved = self.search(counts, next_fired)?;
                if solved {
                    return Ok(true);
                }
                for (&w, &x) in outs.iter().zip(&split) {
                    counts[w] -= x;
                }
                self.path.truncate(base);
                if !crate::pebbles::next_composition(&mut split) {
                    break;
                }
            }
            counts[v] += 2 * spare;
        }
        self.dead.mark(&key);
        Ok(false)
    }
}

/// Storage for states already proven unsolvable.
trait DeadStore {
    fn is_dead(&self, counts: &[u16]) -> bool;
    fn mark(&mut self, counts: &[u16]);
}

struct NoDeadCache;

impl DeadStore for NoDeadCache {
    fn is_dead(&self, _: &[u16]) -> bool {
        false
    }
    fn mark(&mut self, _: &[u16]) {}
}

/// Unsolvable states shared across queries against one [`Solver`].
/// Unsolvability is a property of the state alone, so sharing never changes a verdict.
pub struct DeadCache {
    set: FxHashSet<Box<[u16]>>,
    capacity: usize,
}

impl DeadCache {
    pub fn new(capacity: usize) -> Self {
        DeadCache { set: FxHashSet::default(), capacity }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

impl DeadStore for DeadCache {
    fn is_dead(&self, counts: &[u16]) -> bool {
        !self.set.is_empty() && self.set.contains(counts)
    }
    fn mark(&mut self, counts: &[u16]) {
        if self.set.len() >= self.capacity {
            self.set.clear();
        }
        self.set.insert(counts.into());
    }
}

/// Decides whether `c` can be pebbled to dominate `d` on `g`.
pub fn is_solvable(g: &Graph, c: &Configuration, d: &Distribution) -> Result<SolveCertificate> {
    c.check_len(g.n())?;
    let solver = Solver::new(g, d, SolverOptions::default())?;
    Ok(solver.solve(c.counts())?.into_certificate())
}

/// Minimum number of moves placing a pebble on `r`, or `None` if impossible.
pub fn min_moves(g: &Graph, c: &Configuration, r: usize) -> Result<Option<u64>> {
    c.check_len(g.n())?;
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
    }
    let solver = Solver::new(g, &Distribution::target(g.n(), r, 1), SolverOptions::default())?;
    Ok(solver.min_moves(c.counts())?.map(|m| m.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(v: &[u16]) -> Configuration {
        Configuration::new(v.to_vec())
    }

    #[test]
    fn single_move_solution() {
        let g = Graph::complete(2).unwrap();
        let cert = is_solvable(&g, &cfg(&[2, 0]), &Distribution::new(vec![0, 1])).unwrap();
        assert!(cert.solvable);
        assert_eq!(cert.moves.as_deref(), Some(&[Move { from: 0, to: 1 }][..]));
    }

    #[test]
    fn wide_witness_on_p5_squared_is_unsolvable() {
        let g = Graph::path_power(5, 2).unwrap();
        let d = Distribution::target(5, 0, 1);
        let cert = is_solvable(&g, &cfg(&[0, 1, 1, 1, 1]), &d).unwrap();
        assert!(!cert.solvable);
        assert!(is_solvable(&g, &cfg(&[0, 1, 1, 1, 2]), &d).unwrap().solvable);
    }

    #[test]
    fn long_witness_on_p8_cubed_is_unsolvable() {
        let g = Graph::path_power(8, 3).unwrap();
        let d = Distribution::target(8, 0, 1);
        let c = cfg(&[0, 0, 0, 0, 0, 0, 0, 7]);
        assert!(!is_solvable(&g, &c, &d).unwrap().solvable);
        assert!(is_solvable(&g, &c.plus(7).unwrap(), &d).unwrap().solvable);
    }

    #[test]
    fn pruning_reasons() {
        let g = Graph::path(3).unwrap();
        let d = Distribution::target(3, 2, 1);
        let cert = is_solvable(&g, &cfg(&[1, 1, 0]), &d).unwrap();
        assert!(matches!(cert.reason, Some(UnsolvableReason::PotentialBound { potential: 0, demand: 1 })));
        let cert = is_solvable(&g, &cfg(&[3, 0, 0]), &d).unwrap();
        assert!(matches!(cert.reason, Some(UnsolvableReason::WeightBound { target: 3, .. })));
        let solver = Solver::new(&g, &d, SolverOptions::unpruned()).unwrap();
        assert!(matches!(
            solver.solve(&[3, 0, 0]).unwrap(),
            Verdict::Unsolvable(UnsolvableReason::ReachableSetExhausted { .. })
        ));
    }

    #[test]
    fn min_moves_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(min_moves(&k2, &cfg(&[2, 0]), 1).unwrap(), Some(1));
        let p3 = Graph::path(3).unwrap();
        assert_eq!(min_moves(&p3, &cfg(&[4, 0, 0]), 2).unwrap(), Some(3));
        assert_eq!(min_moves(&p3, &cfg(&[0, 0, 1]), 2).unwrap(), Some(0));
        assert_eq!(min_moves(&p3, &cfg(&[3, 0, 0]), 2).unwrap(), None);
    }

    #[test]
    fn certificates_replay() {
        let g = Graph::path_power(6, 2).unwrap();
        let d = Distribution::new(vec![1, 0, 0, 0, 0, 1]);
        let c = cfg(&[0, 0, 5, 4, 0, 0]);
        let cert = is_solvable(&g, &c, &d).unwrap();
        assert!(cert.solvable);
        assert!(cert.verify(&g, &c, &d).unwrap());
        let json = serde_json::to_string(&cert).unwrap();
        let back: SolveCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let g = Graph::path(3).unwrap();
        let d = Distribution::target(3, 0, 1);
        assert!(is_solvable(&g, &cfg(&[1, 1]), &d).is_err());
        assert!(is_solvable(&g, &cfg(&[1, 1, 1]), &Distribution::new(vec![1])).is_err());
    }
}
