//! Pebbling numbers by exhaustive search.
//!
//! Solvability is monotone: adding a pebble never hurts. So the unsolvable
//! configurations form a down-closed set and `pi = 1 + max |C|` over it. Two
//! engines compute that maximum:
//!
//! * [`Strategy::DownSet`] walks the down-set coordinate by coordinate with a
//!   branch-and-bound on the total, resolving the last coordinate by a
//!   galloping search. It touches a tiny fraction of all configurations.
//! * [`Strategy::SizeScan`] enumerates every configuration of each size
//!   `m = start, start + 1, ...` until one size is entirely solvable.
//!
//! Both are generic over [`MonotoneProperty`], so the cheap-solution
//! threshold reuses them with "has a solution of at most `2^d - 1` moves".

use std::cell::RefCell;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pebbles::{composition_count, next_composition, Configuration, Distribution};
use crate::solver::{DeadCache, Solver, SolverOptions};

pub const DEFAULT_CAP: u128 = 100_000_000;

pub const DEAD_CACHE_CAPACITY: usize = 4_000_000;

/// An upward-closed property of configurations.
pub trait MonotoneProperty {
    fn n(&self) -> usize;
    fn holds(&self, c: &[u16]) -> Result<bool>;
    /// A count `x` such that `x` pebbles on `v` alone satisfy the property.
    fn saturation(&self, v: usize) -> Result<u64>;
    /// The graph, when failing configurations stay failing after any pebbling
    /// move. Enables the push bound of the down-set search.
    fn move_closed(&self) -> Option<&Graph> {
        None
    }
}

/// `C` is `D`-solvable.
pub struct Solvable<'g> {
    solver: Solver<'g>,
}

impl<'g> Solvable<'g> {
    pub fn new(g: &'g Graph, d: &Distribution, opts: SolverOptions) -> Result<Self> {
        Ok(Solvable { solver: Solver::new(g, d, opts)? })
    }

    pub fn solver(&self) -> &Solver<'g> {
        &self.solver
    }
}

impl MonotoneProperty for Solvable<'_> {
    fn n(&self) -> usize {
        self.solver.graph().n()
    }

    fn holds(&self, c: &[u16]) -> Result<bool> {
        self.solver.is_solvable(c)
    }

    fn saturation(&self, v: usize) -> Result<u64> {
        let m = self.solver.metric();
        let mut total: u64 = 0;
        for (u, &dem) in self.solver.demand().iter().enumerate() {
            let term = u64::from(dem)
                .checked_shl(m.dist(v, u))
                .filter(|x| x >> m.dist(v, u) == u64::from(dem))
                .ok_or_else(|| Error::ArithmeticOverflow("saturation bound".into()))?;
            total = total.checked_add(term).ok_or_else(|| Error::ArithmeticOverflow("saturation bound".into()))?;
        }
        Ok(total)
    }

    fn move_closed(&self) -> Option<&Graph> {
        Some(self.solver.graph())
    }
}

/// [`Solvable`] sharing proven-dead states between queries; sequential use only.
pub struct CachedSolvable<'g> {
    inner: Solvable<'g>,
    cache: RefCell<DeadCache>,
}

impl<'g> CachedSolvable<'g> {
    pub fn new(inner: Solvable<'g>, capacity: usize) -> Self {
        CachedSolvable { inner, cache: RefCell::new(DeadCache::new(capacity)) }
    }
}

impl MonotoneProperty for CachedSolvable<'_> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn holds(&self, c: &[u16]) -> Result<bool> {
        Ok(self.inner.solver.solve_cached(c, &mut self.cache.borrow_mut())?.is_solvable())
    }

    fn saturation(&self, v: usize) -> Result<u64> {
        self.inner.saturation(v)
    }

    fn move_closed(&self) -> Option<&Graph> {
        self.inner.move_closed()
    }
}

/// `C` has an `r`-solution with at most `budget` moves; the default budget is
/// `2^diam - 1` (cost at most `2^diam`).
pub struct Cheap<'g> {
    solver: Solver<'g>,
    target: usize,
    budget: u64,
}

impl<'g> Cheap<'g> {
    pub fn new(g: &'g Graph, r: usize) -> Result<Self> {
        if r >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
        }
        let diam = g.metric().diam;
        let budget = 1u64
            .checked_shl(diam)
            .filter(|_| diam < 63)
            .ok_or_else(|| Error::ArithmeticOverflow(format!("2^{diam}")))?
            - 1;
        Self::with_budget(g, r, budget)
    }

    /// Cost at most `budget + 1`. The saturation bound needs `budget >= 2^ecc(r) - 1`.
    pub fn with_budget(g: &'g Graph, r: usize, budget: u64) -> Result<Self> {
        if r >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
        }
        let ecc = g.metric().ecc[r];
        if ecc >= 63 || budget < (1u64 << ecc) - 1 {
            return Err(Error::InvalidParameter(format!("budget {budget} is below 2^ecc(v{}) - 1", r + 1)));
        }
        let opts = SolverOptions { max_moves: Some(budget), ..SolverOptions::default() };
        let solver = Solver::new(g, &Distribution::target(g.n(), r, 1), opts)?;
        Ok(Cheap { solver, target: r, budget })
    }

    /// Largest allowed move count.
    pub fn budget(&self) -> u64 {
        self.budget
    }
}

impl MonotoneProperty for Cheap<'_> {
    fn n(&self) -> usize {
        self.solver.graph().n()
    }

    fn holds(&self, c: &[u16]) -> Result<bool> {
        // The depth-capped search explores every sequence of at most `budget`
        // moves, so it succeeds exactly when the minimum move count fits.
        self.solver.is_solvable(c)
    }

    fn saturation(&self, v: usize) -> Result<u64> {
        // 2^dist(v,r) pebbles on v reach r in 2^dist - 1 moves, within budget.
        Ok(1u64 << self.solver.metric().dist(v, self.target))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    DownSet,
    SizeScan,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub strategy: Strategy,
    /// Limit on solvability queries (down-set) or enumerated configurations (size scan).
    pub cap: u128,
    /// A configuration already known to fail the property; the scan starts just above it.
    pub hint: Option<Configuration>,
    pub solver: SolverOptions,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { strategy: Strategy::DownSet, cap: DEFAULT_CAP, hint: None, solver: SolverOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PebblingNumberResult {
    pub value: u64,
    /// A largest configuration failing the property; `None` only when even the empty one passes.
    pub witness: Option<Configuration>,
    /// Sizes whose status the scan settled, inclusive.
    pub scanned_sizes: (u64, u64),
    /// Property evaluations performed.
    pub queries: u64,
}

/// Largest failing configuration of a monotone property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFailing {
    pub size: Option<u64>,
    pub witness: Option<Vec<u16>>,
    pub queries: u64,
}

struct DownSet<'p, P: MonotoneProperty + ?Sized> {
    prop: &'p P,
    order: Vec<usize>,
    sat: Vec<u64>,
    work: Vec<u16>,
    best: Option<u64>,
    best_cfg: Option<Vec<u16>>,
    collect: bool,
    ties: Vec<Vec<u16>>,
    queries: u64,
    cap: u128,
    /// Per position `p`: every vertex outside `order[p+1..]` paired with a
    /// neighbor one step closer to that suffix, farthest vertices first.
    push_plans: Option<Vec<Vec<(usize, usize)>>>,
    rank: Vec<usize>,
    scratch: Vec<u64>,
}

/// Shortest-path forwarding toward the vertex set `target`.
fn push_plan(g: &Graph, target: &[bool]) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut dist = vec![u32::MAX; n];
    let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&v| target[v]).collect();
    for &v in &queue {
        dist[v] = 0;
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut plan: Vec<(usize, usize)> = (0..n)
        .filter(|&v| !target[v] && dist[v] != u32::MAX)
        .map(|v| {
            let next = *g.neighbors(v).iter().find(|&&w| dist[w] + 1 == dist[v]).expect("bfs parent");
            (v, next)
        })
        .collect();
    plan.sort_by_key(|&(v, _)| (std::cmp::Reverse(dist[v]), v));
    plan
}

impl<P: MonotoneProperty + ?Sized> DownSet<'_, P> {
    fn passes(&mut self) -> Result<bool> {
        self.queries += 1;
        if u128::from(self.queries) > self.cap {
            return Err(Error::CapExceeded { needed: u128::from(self.queries), cap: self.cap });
        }
        self.prop.holds(&self.work)
    }

    /// Smallest total that could still improve (or, when collecting, tie) the incumbent.
    fn wanted(&self) -> u64 {
        match self.best {
            None => 0,
            Some(b) if self.collect => b,
            Some(b) => b + 1,
        }
    }

    fn record(&mut self, size: u64) {
        if self.best.is_none_or(|b| size > b) {
            self.best = Some(size);
            self.best_cfg = Some(self.work.clone());
            self.ties.clear();
            if self.collect {
                self.ties.push(self.work.clone());
            }
        } else if self.collect && self.best == Some(size) {
            self.ties.push(self.work.clone());
        }
    }

    /// Pebbles the assigned prefix `order[..=pos]` can deliver into the suffix
    /// by forwarding halves along shortest paths. The failing configurations
    /// are closed under moves and removal, so the suffix can then hold at most
    /// its own maximum minus this amount.
    fn pushed(&mut self, pos: usize) -> u64 {
        let Some(plans) = &self.push_plans else {
            return 0;
        };
        for (slot, &c) in self.scratch.iter_mut().zip(&self.work) {
            *slot = u64::from(c);
        }
        let mut delivered = 0;
        for &(u, next) in &plans[pos] {
            let half = self.scratch[u] / 2;
            if self.rank[next] > pos {
                delivered += half;
            } else {
                self.scratch[next] += half;
            }
        }
        delivered
    }

    fn set(&mut self, pos: usize, x: u64) -> Result<()> {
        self.work[self.order[pos]] = u16::try_from(x).map_err(|_| Error::Overflow(16))?;
        Ok(())
    }

    /// Resolves the last coordinate: the largest failing `x < good` with `sum + x`
    /// worth recording. `good` is known to pass. Returns that `x` if found.
    fn leaf(&mut self, pos: usize, sum: u64, mut good: u64) -> Result<Option<u64>> {
        let lo = self.wanted().saturating_sub(sum);
        if good <= lo {
            return Ok(None);
        }
        let mut step = 1;
        let mut bad = loop {
            let x = if good - lo > step { good - step } else { lo };
            // x = 0 is the current prefix, which is known to fail
            if x == 0 {
                break 0;
            }
            self.set(pos, x)?;
            if !self.passes()? {
                break x;
            }
            good = x;
            if x == lo {
                self.set(pos, 0)?;
                return Ok(None);
            }
            step *= 2;
        };
        while good - bad > 1 {
            let mid = bad + (good - bad) / 2;
            self.set(pos, mid)?;
            if self.passes()? {
                good = mid;
            } else {
                bad = mid;
            }
        }
        self.set(pos, bad)?;
        self.record(sum + bad);
        self.set(pos, 0)?;
        Ok(Some(bad))
    }

    /// Explores coordinates `pos..` with the current prefix (which fails) summing to `sum`.
    /// `suffix_best[p]` bounds the failing mass placeable on coordinates `p..`.
    fn branch(&mut self, pos: usize, sum: u64, suffix_best: &[u64]) -> Result<()> {
        let last = self.order.len() - 1;
        if pos == last {
            self.leaf(pos, sum, self.sat[pos])?;
            return Ok(());
        }
        let rest = suffix_best[pos + 1];
        // x* of the last coordinate only shrinks as earlier coordinates grow
        let mut hint = self.sat[last];
        let mut c = 0u64;
        loop {
            let need = self.wanted();
            if sum + c + rest < need {
                c = need - sum - rest;
            }
            if c >= self.sat[pos] {
                break;
            }
            if c > 0 {
                self.set(pos, c)?;
                if sum + c + rest.saturating_sub(self.pushed(pos)) < need {
                    c += 1;
                    continue;
                }
                if self.passes()? {
                    break;
                }
            }
            if pos + 1 == last {
                if let Some(x) = self.leaf(last, sum + c, hint)? {
                    hint = x + 1;
                }
            } else {
                self.branch(pos + 1, sum + c, suffix_best)?;
            }
            c += 1;
        }
        self.set(pos, 0)?;
        Ok(())
    }
}

/// Largest configuration failing `prop`, by branch-and-bound over the down-set.
/// With `collect_all`, also returns every failing configuration of that size.
pub fn max_failing_downset<P: MonotoneProperty + ?Sized>(
    prop: &P,
    cap: u128,
    collect_all: bool,
) -> Result<(MaxFailing, Vec<Vec<u16>>)> {
    let n = prop.n();
    let mut sat = Vec::with_capacity(n);
    for v in 0..n {
        sat.push(prop.saturation(v)?);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(sat[v]), v));
    let sat_by_pos: Vec<u64> = order.iter().map(|&v| sat[v]).collect();
    let mut rank = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        rank[v] = p;
    }
    let push_plans = prop.move_closed().map(|g| {
        (0..n)
            .map(|p| {
                let target: Vec<bool> = (0..n).map(|v| rank[v] > p).collect();
                if p + 1 < n {
                    push_plan(g, &target)
                } else {
                    Vec::new()
                }
            })
            .collect()
    });
    let mut ds = DownSet {
        push_plans,
        rank,
        scratch: vec![0; n],
        prop,
        order,
        sat: sat_by_pos,
        work: vec![0; n],
        best: None,
        best_cfg: None,
        collect: false,
        ties: Vec::new(),
        queries: 0,
        cap,
    };
    if ds.passes()? {
        let out = MaxFailing { size: None, witness: None, queries: ds.queries };
        return Ok((out, Vec::new()));
    }
    // suffix_best[p]: largest failing total supported on order[p..]
    let mut suffix_best = vec![0u64; n + 1];
    for p in (0..n).rev() {
        ds.collect = collect_all && p == 0;
        if ds.collect {
            ds.ties.clear();
        }
        ds.branch(p, 0, &suffix_best)?;
        suffix_best[p] = ds.best.unwrap_or(0);
    }
    let out = MaxFailing { size: ds.best, witness: ds.best_cfg.clone(), queries: ds.queries };
    let mut ties = std::mem::take(&mut ds.ties);
    ties.sort_unstable_by(|a, b| b.cmp(a));
    ties.dedup();
    Ok((out, ties))
}

/// Largest failing configuration by scanning sizes upward. Each size is
/// sharded by its first coordinate; the reported witness is the first failing
/// configuration in enumeration order, independent of worker count.
pub fn max_failing_size_scan<P: MonotoneProperty + Sync + ?Sized>(
    prop: &P,
    start: u64,
    start_witness: Option<Vec<u16>>,
    cap: u128,
) -> Result<MaxFailing> {
    let n = prop.n();
    let mut witness = start_witness;
    let mut m = start;
    let mut spent: u128 = 0;
    // Shards past the winning one may run partway; only the sequential prefix is counted.
    let mut queries = 0u64;
    loop {
        spent = spent.saturating_add(composition_count(n, m));
        if spent > cap {
            return Err(Error::CapExceeded { needed: spent, cap });
        }
        let cell = u16::try_from(m).map_err(|_| Error::Overflow(16))?;
        // 1 + the largest shard that has failed so far; smaller shards come later and can stop.
        let settled = AtomicU32::new(0);
        let found = (0..=cell)
            .into_par_iter()
            .rev()
            .map(|first| -> (u64, Result<Option<Vec<u16>>>) {
                let mut count = 0u64;
                let mut cur = vec![0u16; n];
                cur[0] = first;
                if n == 1 {
                    if first != cell {
                        return (0, Ok(None));
                    }
                    return (1, prop.holds(&cur).map(|ok| (!ok).then_some(cur)));
                }
                cur[1] = cell - first;
                loop {
                    if settled.load(Ordering::Relaxed) > u32::from(first) {
                        return (count, Ok(None));
                    }
                    count += 1;
                    match prop.holds(&cur) {
                        Err(e) => return (count, Err(e)),
                        Ok(false) => {
                            settled.fetch_max(u32::from(first) + 1, Ordering::Relaxed);
                            return (count, Ok(Some(cur)));
                        }
                        Ok(true) => {}
                    }
                    // advance within the shard: the tail after coordinate 0
                    if !next_composition(&mut cur[1..]) {
                        return (count, Ok(None));
                    }
                }
            })
            .collect::<Vec<_>>();
        let mut hit = None;
        for (count, r) in found {
            queries += count;
            match r {
                Ok(None) => {}
                other => {
                    hit = Some(other);
                    break;
                }
            }
        }
        match hit {
            None => {
                let size = m.checked_sub(1).filter(|_| witness.is_some());
                return Ok(MaxFailing { size, witness, queries });
            }
            Some(Err(e)) => return Err(e),
            Some(Ok(w)) => {
                witness = w;
                m += 1;
            }
        }
    }
}

fn finish(best: MaxFailing, strategy_start: u64) -> PebblingNumberResult {
    let value = best.size.map_or(0, |s| s + 1);
    PebblingNumberResult {
        value,
        witness: best.witness.map(Configuration::new),
        scanned_sizes: (strategy_start.min(value), value),
        queries: best.queries,
    }
}

/// Minimum `m` such that every configuration of size `m` satisfies `prop`.
pub fn threshold<P: MonotoneProperty + Sync>(prop: &P, opts: &ScanOptions) -> Result<PebblingNumberResult> {
    let n = prop.n();
    if let Some(h) = &opts.hint {
        h.check_len(n)?;
        if prop.holds(h.counts())? {
            return Err(Error::Precondition(format!("hint {h} satisfies the property")));
        }
    }
    match opts.strategy {
        Strategy::DownSet => Ok(finish(max_failing_downset(prop, opts.cap, false)?.0, 0)),
        Strategy::SizeScan => {
            let (start, w) = match &opts.hint {
                Some(h) => (h.size() + 1, Some(h.counts().to_vec())),
                None => (0, None),
            };
            Ok(finish(max_failing_size_scan(prop, start, w, opts.cap)?, start))
        }
    }
}

/// `pi(G, D)`: the least `m` making every size-`m` configuration `D`-solvable.
pub fn pebbling_number(g: &Graph, d: &Distribution, opts: &ScanOptions) -> Result<PebblingNumberResult> {
    d.check_len(g.n())?;
    if d.size() == 0 {
        return Err(Error::InvalidParameter("distribution must demand at least one pebble".into()));
    }
    match opts.strategy {
        Strategy::DownSet => {
            let prop = CachedSolvable::new(Solvable::new(g, d, opts.solver)?, DEAD_CACHE_CAPACITY);
            threshold_sequential(&prop, opts)
        }
        Strategy::SizeScan => threshold(&Solvable::new(g, d, opts.solver)?, opts),
    }
}

/// The down-set engine without the `Sync` bound, for properties with interior caches.
fn threshold_sequential<P: MonotoneProperty>(prop: &P, opts: &ScanOptions) -> Result<PebblingNumberResult> {
    if let Some(h) = &opts.hint {
        h.check_len(prop.n())?;
        if prop.holds(h.counts())? {
            return Err(Error::Precondition(format!("hint {h} satisfies the property")));
        }
    }
    Ok(finish(max_failing_downset(prop, opts.cap, false)?.0, 0))
}

/// `pi(G, D)` together with every unsolvable configuration of size `pi - 1`,
/// in descending lexicographic order.
pub fn maximum_unsolvable(
    g: &Graph,
    d: &Distribution,
    opts: &ScanOptions,
) -> Result<(PebblingNumberResult, Vec<Configuration>)> {
    d.check_len(g.n())?;
    if d.size() == 0 {
        return Err(Error::InvalidParameter("distribution must demand at least one pebble".into()));
    }
    let prop = CachedSolvable::new(Solvable::new(g, d, opts.solver)?, DEAD_CACHE_CAPACITY);
    let (best, ties) = max_failing_downset(&prop, opts.cap, true)?;
    Ok((finish(best, 0), ties.into_iter().map(Configuration::new).collect()))
}

/// `pi_t(G, r)`.
pub fn t_fold_pebbling_number(g: &Graph, r: usize, t: u16, opts: &ScanOptions) -> Result<PebblingNumberResult> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r + 1, n: g.n() });
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    pebbling_number(g, &Distribution::target(g.n(), r, t), opts)
}

/// `pi_t(G, r)` for every target `r`, computed in parallel.
pub fn per_target_numbers(g: &Graph, t: u16, opts: &ScanOptions) -> Result<Vec<PebblingNumberResult>> {
    (0..g.n()).into_par_iter().map(|r| t_fold_pebbling_number(g, r, t, opts)).collect()
}

/// `pi_t(G) = max_r pi_t(G, r)`.
pub fn graph_pebbling_number(g: &Graph, t: u16, opts: &ScanOptions) -> Result<u64> {
    Ok(per_target_numbers(g, t, opts)?.iter().map(|r| r.value).max().unwrap_or(0))
}

/// `q(G, r)`: the least `m` such that every size-`m` configuration has an
/// `r`-solution of cost at most `2^diam`.
pub fn cheap_number(g: &Graph, r: usize, opts: &ScanOptions) -> Result<PebblingNumberResult> {
    threshold(&Cheap::new(g, r)?, opts)
}
