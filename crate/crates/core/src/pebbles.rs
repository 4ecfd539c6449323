//! Pebble configurations, target distributions, pebbling moves, the
//! target-aware potential, and composition enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Width of one per-vertex count cell.
pub const CELL_BITS: u32 = u16::BITS;

fn to_cells(counts: &[u64]) -> Result<Vec<u16>> {
    counts.iter().map(|&c| u16::try_from(c).map_err(|_| Error::Overflow(CELL_BITS))).collect()
}

/// Pebble counts per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<u16>);

/// Target demands per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution(Vec<u16>);

macro_rules! pebble_vector {
    ($ty:ident) => {
        impl $ty {
            pub fn new(counts: Vec<u16>) -> Self {
                $ty(counts)
            }

            pub fn zeros(n: usize) -> Self {
                $ty(vec![0; n])
            }

            /// Checked construction from wide counts.
            pub fn from_counts(counts: &[u64]) -> Result<Self> {
                to_cells(counts).map($ty)
            }

            /// `m` on vertex `v`, zero elsewhere.
            pub fn single(n: usize, v: usize, m: u16) -> Self {
                let mut c = vec![0; n];
                c[v] = m;
                $ty(c)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn counts(&self) -> &[u16] {
                &self.0
            }

            pub fn into_counts(self) -> Vec<u16> {
                self.0
            }

            pub fn get(&self, v: usize) -> u16 {
                self.0[v]
            }

            pub fn size(&self) -> u64 {
                self.0.iter().map(|&c| u64::from(c)).sum()
            }

            /// Vertices with a positive entry.
            pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
                self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(v, _)| v)
            }

            pub fn support_size(&self) -> usize {
                self.0.iter().filter(|&&c| c > 0).count()
            }

            pub fn check_len(&self, n: usize) -> Result<()> {
                if self.0.len() == n {
                    Ok(())
                } else {
                    Err(Error::LengthMismatch { expected: n, got: self.0.len() })
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    };
}

pebble_vector!(Configuration);
pebble_vector!(Distribution);

impl Configuration {
    /// One pebbling step `u -> v`: two pebbles leave `u`, one arrives at `v`.
    pub fn apply_move(&self, g: &Graph, u: usize, v: usize) -> Result<Configuration> {
        self.check_len(g.n())?;
        for w in [u, v] {
            if w >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: w + 1, n: g.n() });
            }
        }
        if !g.is_adjacent(u, v) {
            return Err(Error::NotAdjacent(u + 1, v + 1));
        }
        if self.0[u] < 2 {
            return Err(Error::InsufficientPebbles { vertex: u + 1, have: self.0[u].into() });
        }
        let mut next = self.0.clone();
        next[u] -= 2;
        next[v] = next[v].checked_add(1).ok_or(Error::Overflow(CELL_BITS))?;
        Ok(Configuration(next))
    }

    /// Adds one pebble on `v`.
    pub fn plus(&self, v: usize) -> Result<Configuration> {
        let mut next = self.0.clone();
        next[v] = next[v].checked_add(1).ok_or(Error::Overflow(CELL_BITS))?;
        Ok(Configuration(next))
    }

    /// `true` when every vertex holds at least its demand.
    pub fn dominates(&self, d: &Distribution) -> bool {
        self.0.iter().zip(&d.0).all(|(c, t)| c >= t)
    }

    /// All pebbles on one vertex; the empty configuration counts.
    pub fn is_stacked(&self) -> bool {
        self.support_size() <= 1
    }
}

impl Distribution {
    /// Demand `t` on the single vertex `r`.
    pub fn target(n: usize, r: usize, t: u16) -> Self {
        Distribution::single(n, r, t)
    }
}

/// Number of vertex-disjoint potential moves: pairs of pebbles on one vertex,
/// plus single pebbles sitting on a target vertex up to its demand.
pub fn potential(c: &[u16], d: &[u16]) -> u64 {
    c.iter().zip(d).map(|(&c, &d)| vertex_potential(c, d)).sum()
}

#[inline]
pub(crate) fn vertex_potential(c: u16, d: u16) -> u64 {
    let (c, d) = (u64::from(c), u64::from(d));
    if d > 0 {
        c.min(d) + c.saturating_sub(d) / 2
    } else {
        c / 2
    }
}

/// Number of compositions of `m` into `n` nonnegative parts, saturating at `u128::MAX`.
pub fn composition_count(n: usize, m: u64) -> u128 {
    if n == 0 {
        return u128::from(m == 0);
    }
    binomial(m as u128 + n as u128 - 1, n as u128 - 1)
}

pub fn binomial(a: u128, b: u128) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) / (i + 1) stays integral at every step
        match acc.checked_mul(a - i) {
            Some(x) => acc = x / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Advances `cur` to the next composition of the same total in descending
/// lexicographic order. Returns `false` once the last one, `(0,..,0,m)`, is passed.
pub fn next_composition(cur: &mut [u16]) -> bool {
    let n = cur.len();
    if n < 2 {
        return false;
    }
    let Some(j) = (0..n - 1).rev().find(|&j| cur[j] > 0) else {
        return false;
    };
    cur[j] -= 1;
    let rest: u16 = 1 + cur[j + 1..].iter().sum::<u16>();
    cur[j + 1] = rest;
    for c in &mut cur[j + 2..] {
        *c = 0;
    }
    true
}

/// Every composition of `m` into `n` parts, from `(m,0,..,0)` down to `(0,..,0,m)`.
pub struct Compositions {
    cur: Vec<u16>,
    done: bool,
}

impl Compositions {
    pub fn new(n: usize, m: u16) -> Self {
        let mut cur = vec![0; n];
        if let Some(first) = cur.first_mut() {
            *first = m;
        }
        Compositions { done: n == 0 && m > 0, cur }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u16>;

    fn next(&mut self) -> Option<Vec<u16>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        self.done = !next_composition(&mut self.cur);
        Some(out)
    }
}

pub fn enumerate_configurations(n: usize, m: u16) -> impl Iterator<Item = Configuration> {
    Compositions::new(n, m).map(Configuration)
}

/// All distributions of total `t` on `n` vertices (multisets of size `t`).
pub fn enumerate_distributions(n: usize, t: u16) -> impl Iterator<Item = Distribution> {
    Compositions::new(n, t).map(Distribution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::complete(2).unwrap()
    }

    #[test]
    fn moves() {
        let c = Configuration::new(vec![2, 0]);
        assert_eq!(c.apply_move(&k2(), 0, 1).unwrap().counts(), &[0, 1]);
        let c = Configuration::new(vec![3, 1]);
        assert_eq!(c.apply_move(&k2(), 0, 1).unwrap().counts(), &[1, 2]);
        let c = Configuration::new(vec![1, 0]);
        assert_eq!(c.apply_move(&k2(), 0, 1), Err(Error::InsufficientPebbles { vertex: 1, have: 1 }));
        let p3 = Graph::path(3).unwrap();
        let c = Configuration::new(vec![4, 0, 0]);
        assert_eq!(c.apply_move(&p3, 0, 2), Err(Error::NotAdjacent(1, 3)));
    }

    #[test]
    fn worked_potential_examples() {
        let c = [0, 1, 1, 2, 7];
        assert_eq!(potential(&c, &[2, 0, 0, 0, 0]), 4);
        assert_eq!(potential(&c, &[1, 0, 0, 0, 2]), 5);
        assert_eq!(potential(&[1, 1, 1], &[0, 0, 0]), 0);
    }

    #[test]
    fn small_enumerations() {
        let all: Vec<_> = Compositions::new(2, 2).collect();
        assert_eq!(all, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let all: Vec<_> = Compositions::new(3, 0).collect();
        assert_eq!(all, vec![vec![0, 0, 0]]);
        assert_eq!(Compositions::new(3, 2).count(), 6);
        assert_eq!(Compositions::new(1, 5).collect::<Vec<_>>(), vec![vec![5]]);
    }

    #[test]
    fn enumeration_counts_match_binomials() {
        // Brute force over the box [0, m]^n filtered by sum.
        for n in 1..=4usize {
            for m in 0..=6u16 {
                let mut brute = 0u128;
                let total = (m as usize + 1).pow(n as u32);
                for code in 0..total {
                    let mut x = code;
                    let mut s = 0;
                    for _ in 0..n {
                        s += x % (m as usize + 1);
                        x /= m as usize + 1;
                    }
                    if s == m as usize {
                        brute += 1;
                    }
                }
                assert_eq!(Compositions::new(n, m).count() as u128, brute);
                assert_eq!(composition_count(n, m.into()), brute);
            }
        }
    }

    #[test]
    fn overflow_is_checked() {
        assert_eq!(Configuration::from_counts(&[70_000]), Err(Error::Overflow(16)));
        let c = Configuration::new(vec![u16::MAX, 2]);
        assert_eq!(c.apply_move(&k2(), 1, 0), Err(Error::Overflow(16)));
    }

    #[test]
    fn display_is_dense_syntax() {
        assert_eq!(Configuration::new(vec![0, 1, 7]).to_string(), "0,1,7");
    }
}
