//! Constructive witnesses for the oscillation of `a(n)/√n`, and checks of
//! supermultiplicativity `a(mn) ≥ a(m)·a(n)` for coprime `m, n`.
//!
//! `a(p) = 1` for every prime drives `a(n)/√n` to 0 along the primes. Along
//! `s_m = ∏_{k≤m} p_k²`, every squarefree product of the first `m` primes is
//! a small divisor, so `a(s_m)/√s_m ≥ ∏_{k≤m}(1 + 1/p_k)`, which is unbounded.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::arith::{
    factorize, gcd, isqrt, primes_up_to, small_divisor_sum, small_divisor_sum_factored_with_cap,
    Factorization, DEFAULT_DIVISOR_CAP,
};
use crate::{Error, Execution, Result};

const FIRST_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Largest witness index available by default.
pub const DEFAULT_MAX_WITNESS: usize = 7;
/// Largest witness index with `s_m < 2^63`.
pub const EXTENDED_MAX_WITNESS: usize = 9;

/// The first `m` primes, `1 ≤ m ≤ 15`.
pub fn primes_first(m: usize) -> Result<Vec<u64>> {
    if !(1..=FIRST_PRIMES.len()).contains(&m) {
        return Err(Error::invalid(format!(
            "primes_first needs 1 <= m <= 15 (got {m})"
        )));
    }
    Ok(FIRST_PRIMES[..m].to_vec())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub m: usize,
    /// `∏_{k≤m} p_k²`.
    pub s_m: u64,
    /// `a(s_m)`.
    pub a_value: u64,
    /// `a(s_m)/√s_m`, with `√s_m = ∏_{k≤m} p_k` exactly.
    pub ratio: f64,
    /// `∏_{k≤m}(1 + 1/p_k)`.
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessConfig {
    /// Allow `m` up to [`EXTENDED_MAX_WITNESS`] instead of [`DEFAULT_MAX_WITNESS`].
    pub extended: bool,
    pub divisor_cap: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            extended: false,
            divisor_cap: DEFAULT_DIVISOR_CAP,
        }
    }
}

pub fn witness_report(m: usize) -> Result<WitnessReport> {
    witness_report_with(m, WitnessConfig::default())
}

pub fn witness_report_with(m: usize, config: WitnessConfig) -> Result<WitnessReport> {
    let max = if config.extended {
        EXTENDED_MAX_WITNESS
    } else {
        DEFAULT_MAX_WITNESS
    };
    if !(1..=max).contains(&m) {
        return Err(Error::invalid(format!(
            "witness index needs 1 <= m <= {max} (got {m})"
        )));
    }
    let primes = primes_first(m)?;
    let f = Factorization::from_factors(primes.iter().map(|&p| (p, 2)).collect())?;
    let s_m = f.value();
    let root: u64 = primes.iter().product();
    debug_assert_eq!(isqrt(s_m), root);
    let a_value = small_divisor_sum_factored_with_cap(&f, config.divisor_cap)?;

    // The squarefree divisors alone contribute ∏(p_k + 1).
    let squarefree_sum: u64 = primes.iter().map(|p| p + 1).product();
    assert!(
        a_value >= squarefree_sum,
        "a(s_{m}) = {a_value} < {squarefree_sum}"
    );

    let ratio = a_value as f64 / root as f64;
    let lower_bound: f64 = primes.iter().map(|&p| 1.0 + 1.0 / p as f64).product();
    assert!(
        ratio >= lower_bound,
        "ratio {ratio} below {lower_bound} at m = {m}"
    );
    Ok(WitnessReport {
        m,
        s_m,
        a_value,
        ratio,
        lower_bound,
    })
}

/// Every prime `p ≤ bound` with `a(p)`, which is always 1.
pub fn liminf_witness(bound: u64) -> Result<Vec<(u64, u64)>> {
    if bound < 2 {
        return Err(Error::invalid(format!(
            "liminf witness needs bound >= 2 (got {bound})"
        )));
    }
    primes_up_to(bound)
        .into_iter()
        .map(|p| Ok((p, small_divisor_sum(p)?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupermultCheck {
    pub m: u64,
    pub n: u64,
    /// `a(mn)`.
    pub lhs: u64,
    /// `a(m)·a(n)`.
    pub rhs: u128,
    pub holds: bool,
}

/// Compares `a(mn)` with `a(m)·a(n)`; rejects non-coprime pairs, where the
/// inequality can fail.
pub fn supermult_check(m: u64, n: u64) -> Result<SupermultCheck> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("supermultiplicativity needs m, n >= 1"));
    }
    let g = gcd(m, n);
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    let fm = factorize(m)?;
    let fn_ = factorize(n)?;
    let fmn = fm.coprime_product(&fn_)?;
    let lhs = small_divisor_sum_factored_with_cap(&fmn, DEFAULT_DIVISOR_CAP)?;
    let rhs = small_divisor_sum_factored_with_cap(&fm, DEFAULT_DIVISOR_CAP)? as u128
        * small_divisor_sum_factored_with_cap(&fn_, DEFAULT_DIVISOR_CAP)? as u128;
    Ok(SupermultCheck {
        m,
        n,
        lhs,
        rhs,
        holds: lhs as u128 >= rhs,
    })
}

/// Aggregate of [`supermult_check`] over many pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupermultSummary {
    pub checked: usize,
    /// Number of pairs with `a(mn) = a(m)·a(n)`.
    pub equalities: usize,
    /// Pairs where the inequality failed, in input order.
    pub failures: Vec<SupermultCheck>,
}

impl SupermultSummary {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_pairs(pairs: &[(u64, u64)], exec: Execution) -> Result<SupermultSummary> {
    let checks = exec.try_map(pairs, |&(m, n)| supermult_check(m, n))?;
    Ok(SupermultSummary {
        checked: checks.len(),
        equalities: checks.iter().filter(|c| c.lhs as u128 == c.rhs).count(),
        failures: checks.into_iter().filter(|c| !c.holds).collect(),
    })
}

/// The pair (24, 36): `a(864) = 130 < 160 = a(24)·a(36)`, so
/// supermultiplicativity fails without coprimality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub m: u64,
    pub n: u64,
    pub gcd: u64,
    pub product: u64,
    pub a_product: u64,
    pub a_m_times_a_n: u64,
}

pub fn non_complete_counterexample() -> Counterexample {
    let (m, n) = (24u64, 36u64);
    let a = |k| small_divisor_sum(k).expect("positive argument");
    let out = Counterexample {
        m,
        n,
        gcd: gcd(m, n),
        product: m * n,
        a_product: a(m * n),
        a_m_times_a_n: a(m) * a(n),
    };
    debug_assert!(out.a_product < out.a_m_times_a_n);
    out
}

/// `count` seeded pairs `(m, n)` with `2 ≤ m, n ≤ max` and `gcd(m, n) = 1`,
/// drawn uniformly and rejected until coprime.
pub fn random_coprime_pairs(count: usize, max: u64, seed: u64) -> Result<Vec<(u64, u64)>> {
    if count == 0 {
        return Err(Error::invalid("count must be >= 1"));
    }
    if max < 3 {
        // 2..=2 has no coprime pair.
        return Err(Error::invalid(format!(
            "max must be >= 3 to admit coprime pairs (got {max})"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let m = rng.random_range(2..=max);
        let n = rng.random_range(2..=max);
        if gcd(m, n) == 1 {
            pairs.push((m, n));
        }
    }
    Ok(pairs)
}
