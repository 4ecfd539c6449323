use pebblekit_web::{
    exponent_rows, exponent_series, formula_grid, formula_table, solve_path_power, solve_steps, MAX_SOLVE_N,
};
use serde_json::Value;

fn counts(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn formula_grid_cells() {
    let g = formula_grid(14, 4, 1).unwrap();
    let rows = g["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    let last = &rows[12];
    assert_eq!(last["n"], 14);
    assert_eq!(last["cells"][3]["p"], "16");
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        for (i, cell) in row["cells"].as_array().unwrap().iter().enumerate() {
            let want = pebblekit::path_power::p(n, i as u64 + 1, 1).unwrap();
            assert_eq!(cell["p"], want.to_string());
        }
    }
    // past 64 bits the exact value is shown
    let big = formula_grid(200, 1, 1).unwrap();
    let p = pebblekit::path_power::p_exact(200, 1, 1).unwrap();
    assert_eq!(big["rows"][198]["cells"][0]["p"], p.to_string());
}

#[test]
fn replay_states_follow_the_moves() {
    let out = solve_steps(5, 2, "0,0,0,0,4", "v1:1").unwrap();
    assert_eq!(out["solvable"], true);
    let states = out["states"].as_array().unwrap();
    let moves = out["moves"].as_array().unwrap();
    assert_eq!(states.len(), moves.len() + 1);
    for (i, m) in moves.iter().enumerate() {
        let (from, to) = (m[0].as_u64().unwrap() as usize - 1, m[1].as_u64().unwrap() as usize - 1);
        let (before, after) = (counts(&states[i]), counts(&states[i + 1]));
        let mut want = before.clone();
        want[from] -= 2;
        want[to] += 1;
        assert_eq!(after, want);
    }
    let last = counts(states.last().unwrap());
    assert!(last.iter().zip(counts(&out["target"])).all(|(&a, b)| a >= b));
}

#[test]
fn documented_unsolvable_instance() {
    let out = solve_steps(5, 2, "0,1,1,1,1", "v1:1").unwrap();
    assert_eq!(out["solvable"], false);
    assert_eq!(out["states"].as_array().unwrap().len(), 1);
    assert!(out["reason"]["kind"].is_string());
}

#[test]
fn exponent_small_paths() {
    let rows = exponent_rows(8).unwrap();
    let e: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["e_exact"].as_u64().unwrap()).collect();
    assert_eq!(e, vec![1, 2, 2, 2, 3, 3, 3]);
}

#[test]
fn wrappers_report_errors_as_json() {
    let bad: Vec<String> = vec![
        formula_table(1, 3, 1),
        formula_table(10_000, 3, 1),
        solve_path_power(MAX_SOLVE_N as u32 + 1, 2, "", "v1:1"),
        solve_path_power(4, 2, "1,1", "v1:1"),
        solve_path_power(4, 2, "1,1,1,1", "v9:1"),
        exponent_series(1),
        exponent_series(1_000_000),
    ];
    for s in bad {
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].is_string(), "{s}");
    }
    let ok: Value = serde_json::from_str(&exponent_series(20)).unwrap();
    assert_eq!(ok.as_array().unwrap().len(), 19);
}
