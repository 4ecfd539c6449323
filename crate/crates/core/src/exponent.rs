//! Pebbling exponent of paths: the least `k` with `pi(P_n^(k)) = n`, and an
//! audit of the closed-form bounds `M(n) - m(n) <= e(n) <= M(n)`.
//!
//! `pi(P_n^(k)) = n` exactly when `2^d - 2 <= k (d - 1)` for
//! `d = floor((n-2)/k) + 1`, so everything here is integer arithmetic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_lg(n: u64) -> u32 {
    u64::BITS - (n - 1).leading_zeros()
}

/// Whether `2^d - 2 <= k (d - 1)` with `d = floor((n-2)/k) + 1`.
pub fn criterion(n: u64, k: u64) -> bool {
    let d = (n - 2) / k + 1;
    if d >= 64 {
        // 2^d - 2 exceeds k (d - 1) for every k < n at this size
        return false;
    }
    u128::from((1u64 << d) - 2) <= u128::from(k) * u128::from(d - 1)
}

/// The least `k` whose path power has pebbling number `n`.
pub fn pebbling_exponent_path(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2 (got {n})")));
    }
    Ok((1..n).find(|&k| criterion(n, k)).unwrap_or(n - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentRow {
    pub n: u64,
    pub e_exact: u64,
    /// `floor((n-2)/(ceil(lg n) - 2))`, defined once `ceil(lg n) >= 3`.
    #[serde(rename = "M")]
    pub big_m: Option<u64>,
    /// `floor((n-2)/(ceil(lg n) - 2)^2)`.
    pub m: Option<u64>,
    pub kappa: Option<u64>,
    pub delta: Option<u64>,
    /// `M - m <= e_exact <= M`; only evaluated for `n >= 9`.
    pub bounds_ok: Option<bool>,
    /// The criterion holds at `k = kappa`.
    pub kappa_ok: Option<bool>,
    /// `delta - 1 = ceil(lg n) - 3`.
    pub delta_ok: Option<bool>,
}

pub fn exponent_bounds(n: u64) -> Result<ExponentRow> {
    let e_exact = pebbling_exponent_path(n)?;
    let lg = u64::from(ceil_lg(n));
    let (big_m, m, kappa, delta) = if lg >= 3 {
        let big_m = (n - 2) / (lg - 2);
        let kappa = big_m + 1;
        (Some(big_m), Some((n - 2) / ((lg - 2) * (lg - 2))), Some(kappa), Some((n - 2) / kappa + 1))
    } else {
        (None, None, None, None)
    };
    let audited = n >= 9;
    let bounds_ok = match (audited, big_m, m) {
        (true, Some(big_m), Some(m)) => Some(big_m.saturating_sub(m) <= e_exact && e_exact <= big_m),
        _ => None,
    };
    let kappa_ok = kappa.filter(|_| audited).map(|k| criterion(n, k));
    let delta_ok = delta.filter(|_| audited).map(|d| d - 1 == lg - 3);
    Ok(ExponentRow { n, e_exact, big_m, m, kappa, delta, bounds_ok, kappa_ok, delta_ok })
}

/// Rows for `2..=n_max`, in order.
pub fn exponent_table(n_max: u64) -> Result<Vec<ExponentRow>> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("need n_max >= 2 (got {n_max})")));
    }
    (2..=n_max).into_par_iter().map(exponent_bounds).collect()
}

/// Rows whose exact exponent falls outside `[M - m, M]`.
pub fn findings(rows: &[ExponentRow]) -> Vec<&ExponentRow> {
    rows.iter().filter(|r| r.bounds_ok == Some(false)).collect()
}

/// Whether the criterion, once true at some `k`, stays true for all larger `k < n`.
pub fn criterion_monotone(n: u64) -> bool {
    let mut seen = false;
    for k in 1..n {
        let ok = criterion(n, k);
        if seen && !ok {
            return false;
        }
        seen |= ok;
    }
    true
}
