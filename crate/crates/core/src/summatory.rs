//! Exact evaluation of `S(x) = Σ_{k≤x} a(k)` and residuals against the
//! main term `⅔·x^{3/2}`.
//!
//! Each pair `(d, k)` with `d | k`, `d² ≤ k ≤ x` is a lattice point
//! `(u, y) = (k/d, d)` with `y ≤ u` and `u·y ≤ x`, weighted by `y`. Splitting
//! at `u = isqrt(x)`:
//!
//! - region A, `1 ≤ y ≤ u ≤ isqrt(x)`: `Σ_{u≤r} T(u) = r(r+1)(r+2)/6`;
//! - region B, `u > isqrt(x)`, `y ≤ ⌊x/u⌋`: `Σ_{u>r} T(⌊x/u⌋)`,
//!
//! where `T(m) = m(m+1)/2`. Region B is summed over maximal runs of `u`
//! sharing the quotient `⌊x/u⌋`, which takes `O(√x)` steps.

use std::f64::consts::PI;

use crate::arith::{isqrt, small_divisor_sum_unchecked};
use crate::{Error, Execution, Result};

/// Largest `x` accepted by the brute-force oracle.
pub const BRUTE_CAP: u64 = 1_000_000;

/// `T(m) = m(m+1)/2`.
pub fn triangular(m: u128) -> Result<u128> {
    let (even, odd) = if m.is_multiple_of(2) {
        (m / 2, m.checked_add(1))
    } else {
        (m, Some(m / 2 + 1))
    };
    odd.and_then(|o| even.checked_mul(o))
        .ok_or(Error::Overflow("triangular"))
}

/// Weighted lattice sum over region A: `Σ_{u=1}^{isqrt(x)} T(u)`.
pub fn region_a_sum(x: u64) -> u128 {
    let r = isqrt(x) as u128;
    // r < 2^32, so the product stays below 2^98.
    r * (r + 1) * (r + 2) / 6
}

/// Weighted lattice sum over region B: `Σ_{u=isqrt(x)+1}^{x} T(⌊x/u⌋)`.
pub fn region_b_sum(x: u64) -> Result<u128> {
    let mut total = 0u128;
    let mut u = isqrt(x) + 1;
    while u <= x {
        let q = x / u;
        let last = x / q;
        let run = (last - u + 1) as u128;
        let block = triangular(q as u128)?
            .checked_mul(run)
            .ok_or(Error::Overflow("summatory region B"))?;
        total = total
            .checked_add(block)
            .ok_or(Error::Overflow("summatory region B"))?;
        u = last + 1;
    }
    Ok(total)
}

/// `S(x)` in `O(√x)` time from the region decomposition.
pub fn summatory_exact(x: u64) -> Result<u128> {
    if x == 0 {
        return Err(Error::invalid("summatory functions need x >= 1"));
    }
    region_a_sum(x)
        .checked_add(region_b_sum(x)?)
        .ok_or(Error::Overflow("summatory"))
}

/// `S(x)` by adding `a(k)` computed by trial division, `1 ≤ x ≤ 10^6`.
pub fn summatory_brute(x: u64) -> Result<u128> {
    summatory_brute_with(x, Execution::default())
}

pub fn summatory_brute_with(x: u64, exec: Execution) -> Result<u128> {
    check_brute_range(x)?;
    Ok(exec.sum_range(1, x, |k| small_divisor_sum_unchecked(k) as u128))
}

/// Every prefix of the brute-force oracle: index `k` holds `S(k)` for
/// `0 ≤ k ≤ limit`.
pub fn brute_prefix_sums(limit: u64, exec: Execution) -> Result<Vec<u128>> {
    check_brute_range(limit)?;
    let terms = exec.map_range(1, limit, small_divisor_sum_unchecked);
    let mut prefix = Vec::with_capacity(terms.len() + 1);
    prefix.push(0u128);
    let mut acc = 0u128;
    for t in terms {
        acc += t as u128;
        prefix.push(acc);
    }
    Ok(prefix)
}

fn check_brute_range(x: u64) -> Result<()> {
    if x == 0 || x > BRUTE_CAP {
        return Err(Error::invalid(format!(
            "brute-force summatory needs 1 <= x <= {BRUTE_CAP} (got {x})"
        )));
    }
    Ok(())
}

/// `S(x)` against its main term `⅔·x^{3/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SummatoryReport {
    pub x: u64,
    pub s_exact: u128,
    pub main_term: f64,
    /// `s_exact − main_term`.
    pub residual: f64,
    /// `residual / (x·ln x)`.
    pub normalized_residual: f64,
}

impl SummatoryReport {
    /// `S(x) / main_term`.
    pub fn ratio(&self) -> f64 {
        self.s_exact as f64 / self.main_term
    }
}

pub fn main_term(x: u64) -> f64 {
    let xf = x as f64;
    2.0 / 3.0 * (xf * xf.sqrt())
}

pub fn residual_report(x: u64) -> Result<SummatoryReport> {
    if x < 2 {
        return Err(Error::invalid(format!(
            "residual reports need x >= 2 (got {x})"
        )));
    }
    let s_exact = summatory_exact(x)?;
    let main_term = main_term(x);
    let residual = s_exact as f64 - main_term;
    let xf = x as f64;
    Ok(SummatoryReport {
        x,
        s_exact,
        main_term,
        residual,
        normalized_residual: residual / (xf * xf.ln()),
    })
}

/// Residual reports for a grid of points, in input order.
pub fn residual_grid(points: &[u64], exec: Execution) -> Result<Vec<SummatoryReport>> {
    exec.try_map(points, |&x| residual_report(x))
}

/// `Σ_{k≤x} σ(k) = Σ_{d≤x} d·⌊x/d⌋`, evaluated over runs of constant quotient.
pub fn sigma_summatory_exact(x: u64) -> Result<u128> {
    if x == 0 {
        return Err(Error::invalid("summatory functions need x >= 1"));
    }
    let overflow = || Error::Overflow("sigma summatory");
    let mut total = 0u128;
    let mut d = 1u64;
    while d <= x {
        let q = x / d;
        let last = x / q;
        // Σ_{d ≤ j ≤ last} j = T(last) − T(d − 1)
        let run_sum = triangular(last as u128)? - triangular(d as u128 - 1)?;
        let block = run_sum.checked_mul(q as u128).ok_or_else(overflow)?;
        total = total.checked_add(block).ok_or_else(overflow)?;
        d = last + 1;
    }
    Ok(total)
}

/// `Σ_{k≤x} σ(k)` against `(π²/12)·x²`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSummatoryReport {
    pub x: u64,
    pub s_exact: u128,
    pub main_term: f64,
    pub residual: f64,
    /// `s_exact / main_term`.
    pub ratio: f64,
}

pub fn sigma_summatory_report(x: u64) -> Result<SigmaSummatoryReport> {
    if x < 2 {
        return Err(Error::invalid(format!(
            "residual reports need x >= 2 (got {x})"
        )));
    }
    let s_exact = sigma_summatory_exact(x)?;
    let xf = x as f64;
    let main_term = PI * PI / 12.0 * xf * xf;
    Ok(SigmaSummatoryReport {
        x,
        s_exact,
        main_term,
        residual: s_exact as f64 - main_term,
        ratio: s_exact as f64 / main_term,
    })
}
