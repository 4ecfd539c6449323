use num_bigint::BigUint;
use pebblekit::chordal::{find_pyramid, is_chordal, semi_greedy_solvable, simplicialize_unsolvable};
use pebblekit::exponent::{exponent_bounds, exponent_table, ExponentRow};
use pebblekit::lab::{check_stacking, check_strong_target, check_weak_target, is_d_small, ConjectureReport};
use pebblekit::lab::{ConjectureVerdict, StructureCheck};
use pebblekit::parse::{self, describe, graph_spec};
use pebblekit::path_power::{self, formula_params, p_exact, witness_long, witness_wide, Regime};
use pebblekit::search::{per_target_numbers, threshold, Cheap};
use pebblekit::tree::{max_path_partition, tree_pi};
use pebblekit::{
    pebbling_number, t_fold_pebbling_number, Distribution, Error, Graph, Move, Result, ScanOptions, Solver,
    SolverOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::Report;

/// How a successful run ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violated,
    CapExceeded,
}

pub type Outcome = Result<(Report, Status)>;

fn label(v: usize) -> String {
    format!("v{}", v + 1)
}

fn labels(vs: &[usize]) -> String {
    vs.iter().map(|&v| label(v)).collect::<Vec<_>>().join(" ")
}

fn one_indexed(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn render_moves(moves: &[Move]) -> String {
    moves.iter().map(|m| format!("{}>{}", m.from + 1, m.to + 1)).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn graph_and_target(graph: &str, target: &str) -> Result<(Graph, Distribution)> {
    let g = graph_spec(graph)?;
    let d = parse::distribution(target, Some(g.n()))?;
    Ok((g, d))
}

pub fn formula(n: u64, k: u64, t: u64, n_max: Option<u64>, k_max: Option<u64>, t_max: Option<u64>) -> Outcome {
    let mut report = Report::new(&["n", "k", "t", "d", "b", "w", "l", "p", "regime"]);
    let mut rows = Vec::new();
    for n in n..=n_max.unwrap_or(n) {
        for k in k..=k_max.unwrap_or(k) {
            for t in t..=t_max.unwrap_or(t) {
                let (d, b, w, l, p, regime) = match formula_params(n, k, t) {
                    Ok(pp) => (pp.d, pp.b, pp.w.to_string(), pp.l.to_string(), pp.p.to_string(), pp.regime),
                    Err(Error::ArithmeticOverflow(_)) => {
                        // 2^d alone exceeds 64 bits here, so the long term wins.
                        let (d, b) = path_power::diameter_residue(n, k);
                        let p = p_exact(n, k, t)?.to_string();
                        let w = BigUint::from(t) * 2u32 + (n - 2);
                        (d, b, w.to_string(), p.clone(), p, Regime::StrictlyLong)
                    }
                    Err(e) => return Err(e),
                };
                report.row(vec![
                    n.to_string(),
                    k.to_string(),
                    t.to_string(),
                    d.to_string(),
                    b.to_string(),
                    w.clone(),
                    l.clone(),
                    p.clone(),
                    regime.as_str().to_string(),
                ]);
                rows.push(
                    json!({"n": n, "k": k, "t": t, "d": d, "b": b, "w": w, "l": l, "p": p, "regime": regime.as_str()}),
                );
            }
        }
    }
    if let [single] = rows.as_slice() {
        report.set("p", single["p"].clone());
    }
    report.set("rows", rows);
    Ok((report, Status::Ok))
}

pub fn pi(graph: &str, target: Option<&str>, t: u16, vertex: Option<&str>, opts: &ScanOptions) -> Outcome {
    let g = graph_spec(graph)?;
    let mut report = Report::new(&["target", "pi", "witness", "queries"]);
    let mut instance = json!({"graph": describe(&g)});
    let results = if let Some(target) = target {
        let d = parse::distribution(target, Some(g.n()))?;
        instance["target"] = json!(d);
        vec![(parse::sparse(d.counts()), pebbling_number(&g, &d, opts)?)]
    } else if let Some(v) = vertex {
        let r = parse::vertex(v, g.n())?;
        instance["t"] = json!(t);
        instance["vertex"] = json!(r + 1);
        vec![(format!("{}:{t}", label(r)), t_fold_pebbling_number(&g, r, t, opts)?)]
    } else {
        instance["t"] = json!(t);
        let all = per_target_numbers(&g, t, opts)?;
        all.into_iter().enumerate().map(|(r, res)| (format!("{}:{t}", label(r)), res)).collect()
    };
    let value = results.iter().map(|(_, r)| r.value).max().unwrap_or(0);
    let mut entries = Vec::new();
    for (name, res) in &results {
        report.row(vec![name.clone(), res.value.to_string(), opt(res.witness.as_ref()), res.queries.to_string()]);
        entries.push(json!({"target": name, "pi": res.value, "witness": res.witness, "queries": res.queries}));
    }
    if results.len() > 1 {
        report.note(format!("pi_{t} = {value}"));
    }
    report.set("instance", instance);
    report.set("pi", value);
    report.set("results", entries);
    Ok((report, Status::Ok))
}

pub fn solve(graph: &str, config: &str, target: &str, solver_opts: SolverOptions) -> Outcome {
    let (g, d) = graph_and_target(graph, target)?;
    let c = parse::configuration(config, Some(g.n()))?;
    let cert = Solver::new(&g, &d, solver_opts)?.solve(c.counts())?.into_certificate();
    let verdict = if cert.solvable { "solvable" } else { "unsolvable" };
    let mut report = Report::new(&["verdict", "moves", "detail"]);
    let detail = match (&cert.moves, &cert.reason) {
        (Some(m), _) => render_moves(m),
        (_, Some(reason)) => serde_json::to_string(reason).unwrap_or_default(),
        _ => String::new(),
    };
    let count = cert.moves.as_ref().map(Vec::len);
    report.row(vec![verdict.into(), opt(count), detail]);
    report.set("instance", json!({"graph": describe(&g), "config": c, "target": d}));
    report.set("verdict", verdict);
    report.set("certificate", serde_json::to_value(&cert).unwrap_or(Value::Null));
    Ok((report, Status::Ok))
}

pub fn min_moves(graph: &str, config: &str, target: &str) -> Outcome {
    let g = graph_spec(graph)?;
    let c = parse::configuration(config, Some(g.n()))?;
    let r = parse::vertex(target, g.n())?;
    let solver = Solver::new(&g, &Distribution::target(g.n(), r, 1), SolverOptions::default())?;
    let moves = solver.min_moves(c.counts())?;
    let mut report = Report::new(&["target", "min_moves", "moves"]);
    report.row(vec![
        label(r),
        opt(moves.as_ref().map(Vec::len)),
        moves.as_deref().map(render_moves).unwrap_or_default(),
    ]);
    report.set("instance", json!({"graph": describe(&g), "config": c, "target": r + 1}));
    report.set("min_moves", moves.as_ref().map(Vec::len));
    report.set("moves", serde_json::to_value(&moves).unwrap_or(Value::Null));
    Ok((report, Status::Ok))
}

pub fn witness(n: usize, k: usize, t: u64) -> Outcome {
    let g = Graph::path_power(n, k)?;
    let params = formula_params(n as u64, k as u64, t)?;
    let d = Distribution::target(n, 0, u16::try_from(t).map_err(|_| Error::Overflow(16))?);
    let solver = Solver::new(&g, &d, SolverOptions::default())?;
    let mut report = Report::new(&["kind", "size", "configuration", "solvable"]);
    let mut entries = Vec::new();
    for (kind, c) in [("W", witness_wide(n, t)?), ("L", witness_long(n, k, t)?)] {
        let solvable = solver.is_solvable(c.counts())?;
        report.row(vec![kind.into(), c.size().to_string(), parse::sparse(c.counts()), solvable.to_string()]);
        entries.push(json!({"kind": kind, "size": c.size(), "configuration": c, "solvable": solvable}));
    }
    report.note(format!("p = {} ({})", params.p, params.regime.as_str()));
    report.set("instance", json!({"n": n, "k": k, "t": t}));
    report.set("p", params.p);
    report.set("regime", params.regime.as_str());
    report.set("witnesses", entries);
    Ok((report, Status::Ok))
}

pub fn tree_pi_cmd(graph: &str, t: u64, root: Option<&str>, verify: bool, opts: &ScanOptions) -> Outcome {
    let g = graph_spec(graph)?;
    if !g.is_tree() {
        return Err(Error::Cyclic);
    }
    let roots: Vec<usize> = match root {
        Some(r) => vec![parse::vertex(r, g.n())?],
        None => (0..g.n()).collect(),
    };
    let mut report = Report::new(&["root", "lengths", "pi", "oracle"]);
    let mut entries = Vec::new();
    let mut status = Status::Ok;
    for &r in &roots {
        let lengths = max_path_partition(&g, r)?.lengths();
        let value = tree_pi(&g, r, t)?;
        let oracle = if verify {
            let fold = u16::try_from(t).map_err(|_| Error::Overflow(16))?;
            Some(t_fold_pebbling_number(&g, r, fold, opts)?.value)
        } else {
            None
        };
        if oracle.is_some_and(|o| o != value) {
            status = Status::Violated;
        }
        let shown: Vec<String> = lengths.iter().map(u32::to_string).collect();
        report.row(vec![label(r), shown.join(","), value.to_string(), opt(oracle)]);
        entries.push(json!({"root": r + 1, "lengths": lengths, "pi": value, "oracle": oracle}));
    }
    let global = entries.iter().filter_map(|e| e["pi"].as_u64()).max().unwrap_or(0);
    if root.is_none() {
        report.note(format!("pi_{t}(T) = {global}"));
        report.set("pi", global);
    }
    if status == Status::Violated {
        report.note("formula and oracle disagree");
    }
    report.set("instance", json!({"graph": describe(&g), "t": t, "root": root.map(|_| roots[0] + 1)}));
    report.set("roots", entries);
    Ok((report, status))
}

const EXPONENT_HEADERS: [&str; 10] =
    ["n", "e_exact", "M", "m", "kappa", "delta", "bounds_ok", "kappa_ok", "delta_ok", "finding"];

fn exponent_cells(r: &ExponentRow) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.e_exact.to_string(),
        opt(r.big_m),
        opt(r.m),
        opt(r.kappa),
        opt(r.delta),
        opt(r.bounds_ok),
        opt(r.kappa_ok),
        opt(r.delta_ok),
        is_finding(r).to_string(),
    ]
}

fn is_finding(r: &ExponentRow) -> bool {
    r.bounds_ok == Some(false)
}

pub fn exponent(n: u64) -> Outcome {
    let row = exponent_bounds(n)?;
    let mut report = Report::new(&EXPONENT_HEADERS);
    report.row(exponent_cells(&row));
    report.set("instance", json!({"n": n}));
    report.set("e", row.e_exact);
    report.set("row", serde_json::to_value(&row).unwrap_or(Value::Null));
    Ok((report, Status::Ok))
}

pub fn exponent_table_cmd(n_min: u64, n_max: u64) -> Outcome {
    let rows: Vec<ExponentRow> = exponent_table(n_max)?.into_iter().filter(|r| r.n >= n_min).collect();
    let mut report = Report::new(&EXPONENT_HEADERS);
    for r in &rows {
        report.row(exponent_cells(r));
    }
    let findings: Vec<u64> = rows.iter().filter(|r| is_finding(r)).map(|r| r.n).collect();
    let kappa_failures: Vec<u64> = rows.iter().filter(|r| r.kappa_ok == Some(false)).map(|r| r.n).collect();
    report.note(format!("{} rows; bounds findings at n = {findings:?}", rows.len()));
    // The criterion at kappa is the proof-level claim; a failure there is a violation.
    let status = if kappa_failures.is_empty() { Status::Ok } else { Status::Violated };
    if !kappa_failures.is_empty() {
        report.note(format!("criterion fails at kappa for n = {kappa_failures:?}"));
    }
    report.set("instance", json!({"n_min": n_min, "n_max": n_max}));
    report.set("findings", findings);
    report.set("kappa_failures", kappa_failures);
    report.set("rows", serde_json::to_value(&rows).unwrap_or(Value::Null));
    Ok((report, status))
}

pub fn chordal(graph: &str, config: Option<&str>, target: Option<&str>, t: u16) -> Outcome {
    let g = graph_spec(graph)?;
    let peo = is_chordal(&g);
    let simplicial = g.simplicial_vertices();
    let pyramid = find_pyramid(&g);
    let mut report = Report::new(&["chordal", "elimination_order", "simplicial", "pyramid"]);
    report.row(vec![
        peo.is_some().to_string(),
        peo.as_ref().map(|p| labels(&p.order)).unwrap_or_else(|| "-".into()),
        labels(&simplicial),
        pyramid.map_or_else(|| "-".into(), |p| labels(&p)),
    ]);
    report.set("chordal", peo.is_some());
    report.set("elimination_order", peo.as_ref().map(|p| one_indexed(&p.order)));
    report.set("simplicial", one_indexed(&simplicial));
    report.set("pyramid", pyramid.map(|p| one_indexed(&p)));
    let mut instance = json!({"graph": describe(&g)});
    if let (Some(config), Some(target)) = (config, target) {
        let c = parse::configuration(config, Some(g.n()))?;
        let r = parse::vertex(target, g.n())?;
        instance["config"] = json!(c);
        instance["target"] = json!(r + 1);
        instance["t"] = json!(t);
        if t == 1 {
            let greedy = semi_greedy_solvable(&g, &c, r)?;
            report.note(format!("semi-greedy solvable: {}", greedy.solvable));
            report.set("semi_greedy", serde_json::to_value(&greedy).unwrap_or(Value::Null));
        }
        let d = Distribution::target(g.n(), r, t);
        let solvable = Solver::new(&g, &d, SolverOptions::default())?.is_solvable(c.counts())?;
        report.note(format!("solvable: {solvable}"));
        report.set("solvable", solvable);
        if !solvable && peo.is_some() {
            let s = simplicialize_unsolvable(&g, &c, r, t)?;
            let shifts: Vec<[usize; 2]> = s.shifts.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
            report.note(format!("simplicialized: {} (unsolvable: {})", s.configuration, s.unsolvable));
            report.set(
                "simplicialized",
                json!({"configuration": s.configuration, "shifts": shifts, "unsolvable": s.unsolvable}),
            );
        }
    } else if config.is_some() || target.is_some() {
        return Err(Error::InvalidParameter("--config and --target go together".into()));
    }
    report.set("instance", instance);
    Ok((report, Status::Ok))
}

pub fn pyramid(graph: &str) -> Outcome {
    let g = graph_spec(graph)?;
    let found = find_pyramid(&g);
    let mut report = Report::new(&["pyramid_free", "pyramid"]);
    report.row(vec![found.is_none().to_string(), found.map_or_else(|| "-".into(), |p| labels(&p))]);
    report.set("instance", json!({"graph": describe(&g)}));
    report.set("pyramid_free", found.is_none());
    report.set("pyramid", found.map(|p| one_indexed(&p)));
    Ok((report, Status::Ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Bound {
    Strong,
    Weak,
}

/// Connected graphs on `n` vertices, each edge present with probability `p`.
pub fn random_graphs(count: usize, n: usize, p: f64, seed: u64) -> Result<Vec<Graph>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("edge probability must be in (0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        match Graph::from_edges(n, &edges) {
            Ok(g) => out.push(g),
            Err(Error::Disconnected) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn conjecture(graphs: &[Graph], t: u16, bound: Bound, opts: &ScanOptions) -> Outcome {
    let mut report = Report::new(&["graph", "t", "checked", "violations", "verdict"]);
    let mut reports: Vec<ConjectureReport> = Vec::new();
    for g in graphs {
        let r = match bound {
            Bound::Strong => check_strong_target(g, t, opts)?,
            Bound::Weak => check_weak_target(g, t, opts)?,
        };
        report.row(vec![
            r.graph.clone(),
            r.t.to_string(),
            r.checked.to_string(),
            r.violations.len().to_string(),
            r.verdict.as_str().into(),
        ]);
        for v in &r.violations {
            report.note(format!(
                "{}: D={} pi={} bound={} witness={}",
                r.graph,
                v.d,
                v.pi,
                v.bound,
                opt(v.witness.as_ref())
            ));
        }
        reports.push(r);
    }
    let status = if reports.iter().any(|r| r.verdict == ConjectureVerdict::Violated) {
        Status::Violated
    } else if reports.iter().any(|r| r.verdict == ConjectureVerdict::SkippedCap) {
        Status::CapExceeded
    } else {
        Status::Ok
    };
    report.set("bound", if bound == Bound::Strong { "strong" } else { "weak" });
    report.set("reports", serde_json::to_value(&reports).unwrap_or(Value::Null));
    Ok((report, status))
}

fn structure(g: &Graph, d: &Distribution, check: StructureCheck) -> (Report, Status) {
    let mut report = Report::new(&["pi", "maximum_unsolvable", "holds", "witness"]);
    report.row(vec![
        check.pi.to_string(),
        check.maximum_unsolvable.to_string(),
        check.holds.to_string(),
        opt(check.witness.as_ref()),
    ]);
    report.set("instance", json!({"graph": describe(g), "target": d}));
    report.set("pi", check.pi);
    report.set("maximum_unsolvable", check.maximum_unsolvable);
    report.set("holds", check.holds);
    report.set("witness", json!(check.witness));
    (report, Status::Ok)
}

pub fn dsmall(graph: &str, target: &str, opts: &ScanOptions) -> Outcome {
    let (g, d) = graph_and_target(graph, target)?;
    let check = is_d_small(&g, &d, opts)?;
    Ok(structure(&g, &d, check))
}

pub fn stacking(graph: &str, target: &str, opts: &ScanOptions) -> Outcome {
    let (g, d) = graph_and_target(graph, target)?;
    let check = check_stacking(&g, &d, opts)?;
    // A full-support instance with no stacked maximum would contradict the stacking claim.
    let status = if check.holds { Status::Ok } else { Status::Violated };
    Ok((structure(&g, &d, check).0, status))
}

pub fn cheap(graph: &str, target: &str, budget: Option<u64>, opts: &ScanOptions) -> Outcome {
    let g = graph_spec(graph)?;
    let r = parse::vertex(target, g.n())?;
    let prop = match budget {
        Some(b) => Cheap::with_budget(&g, r, b)?,
        None => Cheap::new(&g, r)?,
    };
    let res = threshold(&prop, opts)?;
    let mut report = Report::new(&["target", "budget", "threshold", "witness"]);
    report.row(vec![label(r), prop.budget().to_string(), res.value.to_string(), opt(res.witness.as_ref())]);
    report.set("instance", json!({"graph": describe(&g), "target": r + 1, "budget": prop.budget()}));
    report.set("threshold", res.value);
    report.set("witness", json!(res.witness));
    Ok((report, Status::Ok))
}
