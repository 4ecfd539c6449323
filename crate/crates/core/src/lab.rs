//! Exhaustive checkers for target-distribution conjectures and the structural
//! notions around them: D-smallness, stacking, complete-graph cover pebbling,
//! simplicial witnesses, and cheap solutions on trees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parse::describe;
use crate::path_power::{self, witness_wide_for};
use crate::pebbles::{enumerate_distributions, potential, Configuration, Distribution};
use crate::search::{
    graph_pebbling_number, maximum_unsolvable, pebbling_number, per_target_numbers, threshold, Cheap, ScanOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureVerdict {
    Holds,
    Violated,
    SkippedCap,
}

impl ConjectureVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureVerdict::Holds => "holds",
            ConjectureVerdict::Violated => "violated",
            ConjectureVerdict::SkippedCap => "skipped-cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(rename = "D")]
    pub d: Distribution,
    pub pi: u64,
    pub bound: u64,
    /// An unsolvable configuration of size `pi - 1 >= bound`.
    pub witness: Option<Configuration>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    /// Graph spec accepted by [`crate::parse::graph_spec`].
    pub graph: String,
    pub t: u16,
    pub checked: u64,
    pub violations: Vec<Violation>,
    pub verdict: ConjectureVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Strong,
    Weak,
}

/// `(D, pi(G, D), bound, witness)` for one distribution.
type Checked = (Distribution, u64, u64, Option<Configuration>);

fn check_target(g: &Graph, t: u16, bound: Bound, opts: &ScanOptions) -> Result<ConjectureReport> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let mut report = ConjectureReport {
        graph: describe(g),
        t,
        checked: 0,
        violations: Vec::new(),
        verdict: ConjectureVerdict::Holds,
    };
    let pi_t = match graph_pebbling_number(g, t, opts) {
        Ok(v) => v,
        Err(Error::CapExceeded { .. }) => {
            report.verdict = ConjectureVerdict::SkippedCap;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let ds: Vec<Distribution> = enumerate_distributions(g.n(), t).collect();
    let outcomes: Vec<Result<Checked>> = ds
        .into_par_iter()
        .map(|d| {
            let limit = match bound {
                Bound::Strong => pi_t + 1 - d.support_size() as u64,
                Bound::Weak => pi_t,
            };
            let res = pebbling_number(g, &d, opts)?;
            Ok((d, res.value, limit, res.witness))
        })
        .collect();
    for outcome in outcomes {
        match outcome {
            Ok((d, pi, limit, witness)) => {
                report.checked += 1;
                if pi > limit {
                    report.violations.push(Violation { d, pi, bound: limit, witness });
                }
            }
            Err(Error::CapExceeded { .. }) => report.verdict = ConjectureVerdict::SkippedCap,
            Err(e) => return Err(e),
        }
    }
    if !report.violations.is_empty() {
        report.verdict = ConjectureVerdict::Violated;
    }
    Ok(report)
}

/// `pi(G, D) <= pi_t(G) - s(D) + 1` for every `D` with `|D| = t`.
pub fn check_strong_target(g: &Graph, t: u16, opts: &ScanOptions) -> Result<ConjectureReport> {
    check_target(g, t, Bound::Strong, opts)
}

/// `pi(G, D) <= pi_t(G)` for every `D` with `|D| = t`.
pub fn check_weak_target(g: &Graph, t: u16, opts: &ScanOptions) -> Result<ConjectureReport> {
    check_target(g, t, Bound::Weak, opts)
}

fn require_full_support(n: usize, d: &Distribution) -> Result<()> {
    d.check_len(n)?;
    if d.support_size() < n {
        return Err(Error::Precondition(format!(
            "distribution must demand every vertex (support {} of {n})",
            d.support_size()
        )));
    }
    Ok(())
}

/// `2|D| - min D` for a distribution demanding every vertex of `K_n`.
pub fn cover_pebbling_complete(n: usize, d: &Distribution) -> Result<u64> {
    require_full_support(n, d)?;
    let min = d.counts().iter().copied().min().map_or(0, u64::from);
    Ok(2 * d.size() - min)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    pub formula: u64,
    pub oracle: u64,
    pub agrees: bool,
}

/// The complete-graph formula next to the exact value.
pub fn verify_cover_pebbling_complete(n: usize, d: &Distribution, opts: &ScanOptions) -> Result<CoverCheck> {
    let formula = cover_pebbling_complete(n, d)?;
    let oracle = pebbling_number(&Graph::complete(n)?, d, opts)?.value;
    Ok(CoverCheck { formula, oracle, agrees: formula == oracle })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub pi: u64,
    /// How many unsolvable configurations have size `pi - 1`.
    pub maximum_unsolvable: u64,
    pub holds: bool,
    pub witness: Option<Configuration>,
}

fn scan_maximum(
    g: &Graph,
    d: &Distribution,
    opts: &ScanOptions,
    pick: impl Fn(&Configuration) -> bool,
) -> Result<StructureCheck> {
    let (res, all) = maximum_unsolvable(g, d, opts)?;
    let witness = all.iter().find(|c| pick(c)).cloned();
    Ok(StructureCheck { pi: res.value, maximum_unsolvable: all.len() as u64, holds: witness.is_some(), witness })
}

/// Whether some maximum-size `D`-unsolvable configuration has potential `|D| - 1`.
pub fn is_d_small(g: &Graph, d: &Distribution, opts: &ScanOptions) -> Result<StructureCheck> {
    let want = d.size().checked_sub(1).ok_or_else(|| Error::InvalidParameter("empty distribution".into()))?;
    scan_maximum(g, d, opts, |c| potential(c.counts(), d.counts()) == want)
}

/// Whether some maximum-size `D`-unsolvable configuration is stacked on one vertex.
pub fn check_stacking(g: &Graph, d: &Distribution, opts: &ScanOptions) -> Result<StructureCheck> {
    require_full_support(g.n(), d)?;
    scan_maximum(g, d, opts, Configuration::is_stacked)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialScan {
    pub graph: String,
    /// `pi(G, v)` for each vertex.
    pub per_target: Vec<u64>,
    pub max: u64,
    /// Vertices attaining the maximum, 0-indexed.
    pub argmax: Vec<usize>,
    pub attained_at_simplicial: bool,
}

/// Whether `max_r pi(G, r)` is attained at a simplicial vertex.
pub fn simplicial_max_scan(g: &Graph, opts: &ScanOptions) -> Result<SimplicialScan> {
    let per_target: Vec<u64> = per_target_numbers(g, 1, opts)?.iter().map(|r| r.value).collect();
    let max = per_target.iter().copied().max().unwrap_or(0);
    let argmax: Vec<usize> = (0..g.n()).filter(|&v| per_target[v] == max).collect();
    let attained_at_simplicial = argmax.iter().any(|&v| g.is_simplicial(v));
    Ok(SimplicialScan { graph: describe(g), per_target, max, argmax, attained_at_simplicial })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sharpness {
    #[serde(rename = "D")]
    pub d: Distribution,
    pub witness: Configuration,
    /// `|W_D| + 1`.
    pub expected: u64,
    pub pi: u64,
    /// The witness itself is rejected by the solver.
    pub witness_unsolvable: bool,
}

/// `pi(P_n^(k), D)` against `|W_D| + 1`; meaningful in the wide regime with `s(D) < n`.
pub fn wide_sharpness(n: usize, k: usize, d: &Distribution, opts: &ScanOptions) -> Result<Sharpness> {
    let g = Graph::path_power(n, k)?;
    d.check_len(n)?;
    let witness = witness_wide_for(d)?;
    let witness_unsolvable = !crate::solver::is_solvable(&g, &witness, d)?.solvable;
    let pi = pebbling_number(&g, d, opts)?.value;
    Ok(Sharpness { d: d.clone(), expected: witness.size() + 1, witness, pi, witness_unsolvable })
}

/// Whether the path-power parameters put `(n, k, |D|)` in the wide regime.
pub fn is_wide_instance(n: usize, k: usize, t: u64) -> Result<bool> {
    let params = path_power::formula_params(n as u64, k as u64, t)?;
    Ok(params.regime == path_power::Regime::Wide)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCostRow {
    pub vertex: usize,
    pub ecc: u32,
    /// Least size forcing a `v`-solution of cost at most `2^ecc(v)`.
    pub cheap_threshold: u64,
    /// Smallest `pi_t(T) - s(D) + 1` over `|D| = t` with `v` in the support.
    pub bound: u64,
    pub holds: bool,
}

/// For every `v`, every configuration of size `pi_t(T) - s(D) + 1` (any `D`
/// of size `t` demanding `v`) reaches `v` with cost at most `2^ecc(v)`.
/// Cost only drops as pebbles are added, so checking the threshold suffices.
pub fn tree_cost_scan(tree: &Graph, t: u16, opts: &ScanOptions) -> Result<Vec<TreeCostRow>> {
    if !tree.is_tree() {
        return Err(Error::Cyclic);
    }
    let pi_t = crate::tree::tree_pi_global(tree, u64::from(t))?;
    let max_support = (t as usize).min(tree.n()) as u64;
    let bound = pi_t + 1 - max_support;
    let ecc = tree.metric().ecc;
    let mut opts = opts.clone();
    opts.hint = None;
    (0..tree.n())
        .into_par_iter()
        .map(|v| {
            let prop = Cheap::with_budget(tree, v, (1u64 << ecc[v]) - 1)?;
            let cheap_threshold = threshold(&prop, &opts)?.value;
            Ok(TreeCostRow { vertex: v, ecc: ecc[v], cheap_threshold, bound, holds: cheap_threshold <= bound })
        })
        .collect()
}
