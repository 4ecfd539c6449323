//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page can show them inline.

use pebblekit::exponent::exponent_bounds;
use pebblekit::parse;
use pebblekit::path_power::formula_params;
use pebblekit::{Error, Graph, Result, Solver, SolverOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest inputs the page accepts; beyond these a click could hang the tab.
pub const MAX_TABLE_N: u64 = 200;
pub const MAX_TABLE_K: u64 = 12;
pub const MAX_SOLVE_N: usize = 16;
pub const MAX_SERIES_N: u64 = 4096;

fn to_json(r: Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e.to_string() })).to_string()
}

fn too_big(what: &str, limit: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("{what} is limited to {limit} in the browser"))
}

/// `p_t(n, k)` for `2 <= n <= n_max`, `1 <= k <= k_max`, as rows of cells.
pub fn formula_grid(n_max: u64, k_max: u64, t: u64) -> Result<Value> {
    if n_max > MAX_TABLE_N {
        return Err(too_big("n", MAX_TABLE_N));
    }
    if k_max > MAX_TABLE_K {
        return Err(too_big("k", MAX_TABLE_K));
    }
    if n_max < 2 || k_max < 1 {
        return Err(Error::InvalidParameter("need n >= 2 and k >= 1".into()));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let mut cells = Vec::new();
        for k in 1..=k_max {
            let cell = match formula_params(n, k, t) {
                Ok(pp) => json!({"p": pp.p.to_string(), "d": pp.d, "regime": pp.regime.as_str()}),
                Err(Error::ArithmeticOverflow(_)) => {
                    let p = pebblekit::path_power::p_exact(n, k, t)?;
                    json!({"p": p.to_string(), "d": pebblekit::path_power::diameter_residue(n, k).0, "regime": "strictly-long"})
                }
                Err(e) => return Err(e),
            };
            cells.push(cell);
        }
        rows.push(json!({"n": n, "cells": cells}));
    }
    Ok(json!({"t": t, "k_max": k_max, "rows": rows}))
}

/// Solves on `P_n^(k)` and lists the configuration after every move.
pub fn solve_steps(n: usize, k: usize, config: &str, target: &str) -> Result<Value> {
    if n > MAX_SOLVE_N {
        return Err(too_big("n", MAX_SOLVE_N));
    }
    let g = Graph::path_power(n, k)?;
    let c = parse::configuration(config, Some(n))?;
    let d = parse::distribution(target, Some(n))?;
    let cert = Solver::new(&g, &d, SolverOptions::default())?.solve(c.counts())?.into_certificate();
    let mut states = vec![c.clone()];
    for m in cert.moves.iter().flatten() {
        let next = states.last().unwrap().apply_move(&g, m.from, m.to)?;
        states.push(next);
    }
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect();
    Ok(json!({
        "n": n,
        "k": k,
        "edges": edges,
        "target": d,
        "solvable": cert.solvable,
        "moves": cert.moves,
        "reason": cert.reason,
        "states": states,
    }))
}

/// Exact exponent of `P_n` with the `M(n)`, `m(n)` bounds, for `2 <= n <= n_max`.
pub fn exponent_rows(n_max: u64) -> Result<Value> {
    if n_max > MAX_SERIES_N {
        return Err(too_big("n", MAX_SERIES_N));
    }
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 (got {n_max})")));
    }
    // sequential on purpose: the page runs without worker threads
    let rows = (2..=n_max).map(exponent_bounds).collect::<Result<Vec<_>>>()?;
    Ok(serde_json::to_value(rows).unwrap_or(Value::Null))
}

#[wasm_bindgen]
pub fn formula_table(n_max: u32, k_max: u32, t: u32) -> String {
    to_json(formula_grid(n_max.into(), k_max.into(), t.into()))
}

#[wasm_bindgen]
pub fn solve_path_power(n: u32, k: u32, config: &str, target: &str) -> String {
    to_json(solve_steps(n as usize, k as usize, config, target))
}

#[wasm_bindgen]
pub fn exponent_series(n_max: u32) -> String {
    to_json(exponent_rows(n_max.into()))
}
