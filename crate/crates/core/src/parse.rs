//! Text formats: graph generator specs, the edge-list file format, and the
//! dense / sparse configuration syntax. All labels here are 1-indexed.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pebbles::{Configuration, Distribution};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| perr(format!("expected a number for {what}, got {s:?}")))
}

/// Parses `key=value` pairs such as `n=5,k=2`.
fn keyed(body: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let mut out = vec![None; keys.len()];
    for part in body.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| perr(format!("expected key=value, got {part:?}")))?;
        let idx = keys
            .iter()
            .position(|&key| key == k.trim())
            .ok_or_else(|| perr(format!("unknown key {:?} (expected {})", k.trim(), keys.join(", "))))?;
        out[idx] = Some(parse_num(v, k)?);
    }
    out.into_iter().zip(keys).map(|(v, k)| v.ok_or_else(|| perr(format!("missing {k}=")))).collect()
}

/// Parses `1-2,2-3`; commas, semicolons and spaces all separate edges.
fn edge_pairs(body: &str) -> Result<Vec<(usize, usize)>> {
    body.split([',', ';', ' '])
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once('-').ok_or_else(|| perr(format!("expected an edge like 1-2, got {p:?}")))?;
            Ok((parse_num(a, "edge endpoint")?, parse_num(b, "edge endpoint")?))
        })
        .collect()
}

/// Builds a graph from a generator spec:
/// `pathpower:n=<n>,k=<k>`, `tree:<u-v,...>`, `complete:n=<n>`,
/// `cycle:n=<n>`, `path:n=<n>`, `edges:<n>:<u-v,...>`, or `file:<path>` for
/// an edge-list file.
pub fn graph_spec(spec: &str) -> Result<Graph> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| perr(format!("graph spec {spec:?} lacks a kind prefix such as pathpower:")))?;
    match kind.trim() {
        "pathpower" => {
            let v = keyed(body, &["n", "k"])?;
            Graph::path_power(v[0], v[1])
        }
        "complete" => Graph::complete(keyed(body, &["n"])?[0]),
        "cycle" => Graph::cycle(keyed(body, &["n"])?[0]),
        "path" => Graph::path(keyed(body, &["n"])?[0]),
        "tree" => Graph::tree(&edge_pairs(body)?),
        "edges" => {
            let (n, list) = body.split_once(':').ok_or_else(|| perr("expected edges:<n>:<u-v,...>"))?;
            let n: usize = parse_num(n, "n")?;
            let mut edges = Vec::new();
            for (u, v) in edge_pairs(list)? {
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::VertexOutOfRange { vertex: if u == 0 || u > n { u } else { v }, n });
                }
                edges.push((u - 1, v - 1));
            }
            Graph::from_edges(n, &edges)
        }
        "file" => {
            let text =
                std::fs::read_to_string(body.trim()).map_err(|e| perr(format!("cannot read {}: {e}", body.trim())))?;
            edge_list(&text)
        }
        other => Err(perr(format!(
            "unknown graph kind {other:?} (expected pathpower, tree, complete, cycle, path, edges, file)"
        ))),
    }
}

/// Parses the edge-list format: first line `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| perr("empty edge list"))?;
    let mut hdr = header.split_whitespace();
    let n: usize = parse_num(hdr.next().unwrap_or(""), "n")?;
    let m: usize = parse_num(hdr.next().ok_or_else(|| perr("header needs `n m`"))?, "m")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(perr(format!("expected `u v`, got {line:?}")));
        };
        let (u, v): (usize, usize) = (parse_num(a, "u")?, parse_num(b, "v")?);
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::VertexOutOfRange { vertex: if u == 0 || u > n { u } else { v }, n });
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(perr(format!("header promises {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges)
}

/// A spec string that [`graph_spec`] parses back to `g`.
pub fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    format!("edges:{}:{}", g.n(), edges.join(","))
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parses dense `0,1,1,2,7` or sparse `v5:7,v4:2` syntax. Sparse entries on
/// the same vertex add up. `n` is required for sparse input and checked for dense.
pub fn counts(text: &str, n: Option<usize>) -> Result<Vec<u64>> {
    let text = text.trim();
    if text.contains(':') {
        let n = n.ok_or_else(|| perr("sparse syntax needs the vertex count"))?;
        let mut out = vec![0u64; n];
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let (v, c) = part.split_once(':').ok_or_else(|| perr(format!("expected v<i>:<count>, got {part:?}")))?;
            let v = v.trim();
            let idx: usize = parse_num(v.strip_prefix('v').unwrap_or(v), "vertex")?;
            if idx == 0 || idx > n {
                return Err(Error::VertexOutOfRange { vertex: idx, n });
            }
            out[idx - 1] += parse_num::<u64>(c, "count")?;
        }
        Ok(out)
    } else {
        let out: Vec<u64> = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',').map(|c| parse_num(c, "count")).collect::<Result<_>>()?
        };
        if let Some(n) = n {
            if out.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: out.len() });
            }
        }
        Ok(out)
    }
}

pub fn configuration(text: &str, n: Option<usize>) -> Result<Configuration> {
    Configuration::from_counts(&counts(text, n)?)
}

pub fn distribution(text: &str, n: Option<usize>) -> Result<Distribution> {
    Distribution::from_counts(&counts(text, n)?)
}

/// Parses a single vertex label `v3` or `3` into a 0-indexed vertex.
pub fn vertex(text: &str, n: usize) -> Result<usize> {
    let t = text.trim();
    let idx: usize = parse_num(t.strip_prefix('v').unwrap_or(t), "vertex")?;
    if idx == 0 || idx > n {
        return Err(Error::VertexOutOfRange { vertex: idx, n });
    }
    Ok(idx - 1)
}

/// Sparse rendering `v1:2,v4:1` of the positive entries.
pub fn sparse(counts: &[u16]) -> String {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, c)| format!("v{}:{c}", v + 1))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_specs() {
        assert_eq!(graph_spec("pathpower:n=5,k=2").unwrap(), Graph::path_power(5, 2).unwrap());
        assert_eq!(graph_spec("complete:n=4").unwrap(), Graph::complete(4).unwrap());
        assert_eq!(graph_spec("cycle:n=5").unwrap().edge_count(), 5);
        assert_eq!(graph_spec("path:n=4").unwrap(), Graph::path(4).unwrap());
        assert_eq!(graph_spec("tree:1-2,2-3,2-4").unwrap().degree(1), 3);
        assert!(matches!(graph_spec("pathpower:n=5"), Err(Error::Parse(_))));
        assert!(matches!(graph_spec("wheel:n=5"), Err(Error::Parse(_))));
        assert_eq!(graph_spec("tree:1-2,3-4"), Err(Error::Disconnected));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::path_power(6, 2).unwrap();
        let text = write_edge_list(&g);
        assert!(text.starts_with("6 9\n"));
        assert_eq!(edge_list(&text).unwrap(), g);
        assert!(edge_list("3 2\n1 2\n").is_err());
        assert!(edge_list("2 1\n1 3\n").is_err());
    }

    #[test]
    fn configuration_syntax() {
        let dense = configuration("0,1,1,2,7", Some(5)).unwrap();
        let sparse_form = configuration("v5:7,v4:2,v2:1,v3:1", Some(5)).unwrap();
        assert_eq!(dense, sparse_form);
        assert_eq!(sparse(dense.counts()), "v2:1,v3:1,v4:2,v5:7");
        assert!(configuration("1,2", Some(3)).is_err());
        assert!(configuration("v4:1", Some(3)).is_err());
        assert_eq!(distribution("v1:1,v1:1", Some(2)).unwrap().counts(), &[2, 0]);
        assert_eq!(vertex("v3", 5).unwrap(), 2);
        assert!(vertex("v0", 5).is_err());
    }
}
