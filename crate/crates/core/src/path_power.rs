//! Closed forms for the t-fold pebbling numbers of path powers `P_n^(k)`,
//! the per-vertex values, and the extremal unsolvable configurations.
//!
//! With `d = floor((n-2)/k) + 1` (the diameter) and `b = (n-2) - k(d-1)`:
//! `w = 2t + n - 2`, `l = t 2^d + b`, and `p = max(w, l)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pebbles::{Configuration, Distribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Wide,
    BarelyLong,
    StrictlyLong,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Wide => "wide",
            Regime::BarelyLong => "barely-long",
            Regime::StrictlyLong => "strictly-long",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPowerParams {
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub d: u64,
    pub b: u64,
    /// Threshold `t0` as an unreduced fraction `(numerator, denominator)`.
    pub t0: (u64, u64),
    pub w: u64,
    pub l: u64,
    pub p: u64,
    pub regime: Regime,
}

fn overflow(what: &str) -> Error {
    Error::ArithmeticOverflow(what.to_string())
}

fn pow2(d: u64) -> Result<u64> {
    if d >= 63 {
        return Err(overflow(&format!("2^{d}")));
    }
    Ok(1 << d)
}

fn check_positive(n: u64, k: u64, t: u64) -> Result<()> {
    if n == 0 || k == 0 || t == 0 {
        return Err(Error::InvalidParameter(format!("n, k, t must be positive (got n={n}, k={k}, t={t})")));
    }
    Ok(())
}

/// Diameter `d` and residue `b` of `P_n^(k)` for `n >= 2`.
pub fn diameter_residue(n: u64, k: u64) -> (u64, u64) {
    let d = (n - 2) / k + 1;
    (d, (n - 2) - k * (d - 1))
}

/// Whether `t (2^d - 2) <= k (d - 1)`, i.e. the wide value dominates.
/// Always true at `d = 1`, where both sides vanish.
pub fn is_wide(k: u64, d: u64, t: u64) -> Result<bool> {
    let lhs = u128::from(t) * u128::from(pow2(d)? - 2);
    let rhs = u128::from(k) * u128::from(d - 1);
    Ok(lhs <= rhs)
}

pub fn formula_params(n: u64, k: u64, t: u64) -> Result<PathPowerParams> {
    check_positive(n, k, t)?;
    if n == 1 {
        // The single vertex needs all t pebbles placed directly.
        let p = t - 1;
        return Ok(PathPowerParams { n, k, t, d: 0, b: 0, t0: (1, 1), w: p, l: p, p, regime: Regime::Wide });
    }
    let (d, b) = diameter_residue(n, k);
    let two_d = pow2(d)?;
    let w = t.checked_mul(2).and_then(|x| x.checked_add(n - 2)).ok_or_else(|| overflow("2t + n - 2"))?;
    let l = t.checked_mul(two_d).and_then(|x| x.checked_add(b)).ok_or_else(|| overflow("t 2^d + b"))?;
    let t0 = if d == 1 { (1, 1) } else { (k * (d - 1), two_d - 2) };
    let regime = if is_wide(k, d, t)? {
        Regime::Wide
    } else if t == t0.0.div_ceil(t0.1) {
        Regime::BarelyLong
    } else {
        Regime::StrictlyLong
    };
    Ok(PathPowerParams { n, k, t, d, b, t0, w, l, p: w.max(l), regime })
}

/// `p_t(n, k)`, with `p_t(1, k) = t - 1`.
pub fn p(n: u64, k: u64, t: u64) -> Result<u64> {
    Ok(formula_params(n, k, t)?.p)
}

/// The classical single-target closed form `2^ceil((n-1)/k) + ((n-2) mod k)`.
pub fn classical_form(n: u64, k: u64) -> Result<u64> {
    if n < 2 || k == 0 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and k >= 1 (got n={n}, k={k})")));
    }
    pow2((n - 1).div_ceil(k))?.checked_add((n - 2) % k).ok_or_else(|| overflow("classical form"))
}

/// `p_t(n, k)` without a size limit.
pub fn p_exact(n: u64, k: u64, t: u64) -> Result<BigUint> {
    check_positive(n, k, t)?;
    if n == 1 {
        return Ok(BigUint::from(t - 1));
    }
    let (d, b) = diameter_residue(n, k);
    let w = BigUint::from(t) * 2u32 + (n - 2);
    let l = (BigUint::from(t) << d) + b;
    Ok(w.max(l))
}

/// [`classical_form`] without a size limit.
pub fn classical_form_exact(n: u64, k: u64) -> Result<BigUint> {
    if n < 2 || k == 0 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and k >= 1 (got n={n}, k={k})")));
    }
    Ok((BigUint::from(1u32) << (n - 1).div_ceil(k)) + (n - 2) % k)
}

/// Whether `v_i` (1-indexed) is simplicial in `P_n^(k)`.
pub fn is_simplicial_index(n: u64, k: u64, i: u64) -> bool {
    i == 1 || i == n || k + 1 >= n
}

/// `pi_t(P_n^(k), v_i)` for 1-indexed `i`.
pub fn pi_at_vertex(n: u64, k: u64, t: u64, i: u64) -> Result<u64> {
    check_positive(n, k, t)?;
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { vertex: i as usize, n: n as usize });
    }
    if is_simplicial_index(n, k, i) {
        return p(n, k, t);
    }
    let mut best = 0;
    for t1 in 1..=t {
        let t2 = t + 1 - t1;
        best = best.max(p(i, k, t1)? + p(n - i + 1, k, t2)? - 1);
    }
    Ok(best)
}

/// Both sides of `p_{t1}(n1,k) + p_{t2}(n2,k) - 1 <= p_t(n,k)` with
/// `n = n1 + n2 - 1` and `t = t1 + t2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn check_interior_inequality(n1: u64, n2: u64, t1: u64, t2: u64, k: u64) -> Result<InteriorCheck> {
    if n1 == 0 || n2 == 0 || t1 == 0 || t2 == 0 || k == 0 {
        return Err(Error::Precondition("n1, n2, t1, t2, k must all be at least 1".into()));
    }
    let lhs = p(n1, k, t1)? + p(n2, k, t2)? - 1;
    let rhs = p(n1 + n2 - 1, k, t1 + t2 - 1)?;
    Ok(InteriorCheck { lhs, rhs, holds: lhs <= rhs })
}

fn cells(counts: Vec<u64>) -> Result<Configuration> {
    Configuration::from_counts(&counts)
}

/// `W = (0, 1, ..., 1, 2t-1)`: unsolvable for target `v1`, of size `w_t(n) - 1`.
pub fn witness_wide(n: usize, t: u64) -> Result<Configuration> {
    if n < 2 || t == 0 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and t >= 1 (got n={n}, t={t})")));
    }
    let mut c = vec![1u64; n];
    c[0] = 0;
    c[n - 1] = 2 * t - 1;
    cells(c)
}

/// `W_D`: zeros on the support of `D`, `2|D| - 1` on the least-index
/// demand-free vertex, one pebble on every other vertex.
pub fn witness_wide_for(d: &Distribution) -> Result<Configuration> {
    let t = d.size();
    let free = (0..d.len())
        .find(|&v| d.get(v) == 0)
        .ok_or_else(|| Error::Precondition("W_D needs a vertex without demand".into()))?;
    let c = (0..d.len())
        .map(|v| match (d.get(v), v == free) {
            (x, _) if x > 0 => 0,
            (_, true) => 2 * t - 1,
            _ => 1,
        })
        .collect();
    cells(c)
}

/// `L`: zeros on `v1..v_{(d-1)k+1}`, ones up to `v_{n-1}`, `t 2^d - 1` on `v_n`.
pub fn witness_long(n: usize, k: usize, t: u64) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 (got {n})")));
    }
    let params = formula_params(n as u64, k as u64, t)?;
    let zeros = (params.d as usize - 1) * k + 1;
    let top = t.checked_mul(pow2(params.d)?).ok_or_else(|| overflow("t 2^d"))? - 1;
    let c = (0..n)
        .map(|i| match i {
            _ if i == n - 1 => top,
            _ if i < zeros => 0,
            _ => 1,
        })
        .collect();
    cells(c)
}

/// A maximum-size configuration with potential `|D| - 1` that fails `D`:
/// the odd-count shape when some vertex is demand-free, the stacked shape otherwise.
pub fn canonical_small(d: &Distribution) -> Result<Configuration> {
    let t = d.size();
    if t == 0 {
        return Err(Error::InvalidParameter("distribution must demand at least one pebble".into()));
    }
    if d.support_size() < d.len() {
        return witness_wide_for(d);
    }
    let a = d.counts().iter().copied().min().expect("nonempty");
    let v = d.counts().iter().position(|&x| x == a).expect("minimum exists");
    let mut c = vec![0u64; d.len()];
    c[v] = 2 * t - u64::from(a) - 1;
    cells(c)
}
