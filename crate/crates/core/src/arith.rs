//! Exact integer arithmetic: integer square roots, factorization, divisor
//! enumeration and the divisor functions `a`, `b`, `σ`, `τ`.
//!
//! Every function here works in exact integers. The small-divisor test is
//! always `d² ≤ n` (or `d ≤ isqrt(n)`), never a floating-point square root.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Largest value accepted by [`factorize`] and [`Factorization`] is `2^63 - 1`.
pub const FACTOR_LIMIT: u64 = 1 << 63;

/// Default cap on `τ(n)` for divisor enumeration.
pub const DEFAULT_DIVISOR_CAP: u64 = 1 << 20;

/// Primes below this bound are removed by trial division before Pollard rho.
const TRIAL_BOUND: u64 = 1_000_000;

/// `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// `⌊√n⌋` for 128-bit arguments.
pub fn isqrt_u128(n: u128) -> u128 {
    n.isqrt()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All primes `p ≤ limit`, by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("sieve limit exceeds address space");
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_BOUND - 1))
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    // The first twelve primes are a witness set for all n < 3.3 * 10^24.
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be an odd composite.
/// Returns a nontrivial factor.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1..n {
        let step = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut g = 1u64;
        let mut q = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // The batched product hit zero; replay one step at a time.
            loop {
                ys = step(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho failed on composite {n}")
}

/// Prime factorization `n = p_1^β_1 ⋯ p_k^β_k`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization {
            value: 1,
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking that the
    /// primes are strictly increasing and prime, exponents are positive, and
    /// the product stays below [`FACTOR_LIMIT`].
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut value: u64 = 1;
        let mut prev = 1;
        for &(p, e) in &factors {
            if p <= prev {
                return Err(Error::invalid(format!(
                    "primes must be strictly increasing (got {p} after {prev})"
                )));
            }
            if !is_prime(p) {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            if e == 0 {
                return Err(Error::invalid(format!("zero exponent for prime {p}")));
            }
            let pe = p
                .checked_pow(e)
                .ok_or(Error::Overflow("factorization value"))?;
            value = value
                .checked_mul(pe)
                .filter(|&v| v < FACTOR_LIMIT)
                .ok_or(Error::Overflow("factorization value"))?;
            prev = p;
        }
        Ok(Factorization { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factorization of `self.value() * other.value()` for coprime operands.
    pub fn coprime_product(&self, other: &Factorization) -> Result<Factorization> {
        let g = gcd(self.value, other.value);
        if g != 1 {
            return Err(Error::NotCoprime {
                m: self.value,
                n: other.value,
                gcd: g,
            });
        }
        let value = self
            .value
            .checked_mul(other.value)
            .filter(|&v| v < FACTOR_LIMIT)
            .ok_or(Error::Overflow("coprime product"))?;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            if self.factors[i].0 < other.factors[j].0 {
                factors.push(self.factors[i]);
                i += 1;
            } else {
                factors.push(other.factors[j]);
                j += 1;
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Ok(Factorization { value, factors })
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n` for `1 ≤ n < 2^63`: trial division by the primes below 10^6,
/// then Brent–Pollard rho with Miller–Rabin on the cofactor.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    if n >= FACTOR_LIMIT {
        return Err(Error::invalid(format!("{n} is not below 2^63")));
    }
    let mut found: BTreeMap<u64, u32> = BTreeMap::new();
    let mut rest = n;
    for &p in trial_primes() {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            rest /= p;
            *found.entry(p).or_default() += 1;
        }
    }
    if rest > 1 {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            // No prime factor below TRIAL_BOUND remains, so m < TRIAL_BOUND² is prime.
            if m < TRIAL_BOUND * TRIAL_BOUND || is_prime(m) {
                *found.entry(m).or_default() += 1;
            } else {
                let d = pollard_brent(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
    }
    Ok(Factorization {
        value: n,
        factors: found.into_iter().collect(),
    })
}

/// The divisors of `n` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorList(Vec<u64>);

impl DivisorList {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

/// Divisors of `f.value()` with the default cap on `τ`.
pub fn divisors(f: &Factorization) -> Result<DivisorList> {
    divisors_with_cap(f, DEFAULT_DIVISOR_CAP)
}

pub fn divisors_with_cap(f: &Factorization, cap: u64) -> Result<DivisorList> {
    let count = tau(f);
    if count > cap {
        return Err(Error::DivisorCapExceeded { count, cap });
    }
    let mut ds = Vec::with_capacity(count as usize);
    ds.push(1u64);
    for &(p, e) in f.factors() {
        let len = ds.len();
        let mut pk = 1u64;
        for _ in 0..e {
            // pk divides n < 2^63, so neither product overflows.
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    Ok(DivisorList(ds))
}

/// `a(n)`: the sum of the divisors `d` of `n` with `d² ≤ n`, by trial
/// division up to `isqrt(n)`.
pub fn small_divisor_sum(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("a(n) is undefined for n = 0"));
    }
    Ok(small_divisor_sum_unchecked(n))
}

#[inline]
pub(crate) fn small_divisor_sum_unchecked(n: u64) -> u64 {
    (1..=isqrt(n)).filter(|d| n.is_multiple_of(*d)).sum()
}

/// `a(n)` from a factorization, by summing the enumerated divisors with
/// `d² ≤ n`.
pub fn small_divisor_sum_factored(f: &Factorization) -> Result<u64> {
    small_divisor_sum_factored_with_cap(f, DEFAULT_DIVISOR_CAP)
}

pub fn small_divisor_sum_factored_with_cap(f: &Factorization, cap: u64) -> Result<u64> {
    let n = f.value() as u128;
    let ds = divisors_with_cap(f, cap)?;
    Ok(ds
        .as_slice()
        .iter()
        .take_while(|&&d| (d as u128) * (d as u128) <= n)
        .sum())
}

/// `σ(n) = Σ_{d|n} d = ∏ (p^{β+1} − 1)/(p − 1)`.
pub fn sigma(f: &Factorization) -> Result<u128> {
    f.factors().iter().try_fold(1u128, |acc, &(p, e)| {
        acc.checked_mul(geometric_sum(p, e)?)
            .ok_or(Error::Overflow("sigma"))
    })
}

/// `τ(n) = ∏ (β + 1)`, the number of divisors.
pub fn tau(f: &Factorization) -> u64 {
    f.factors().iter().map(|&(_, e)| e as u64 + 1).product()
}

/// `1 + p + ⋯ + p^e`.
fn geometric_sum(p: u64, e: u32) -> Result<u128> {
    let mut sum = 1u128;
    let mut pk = 1u128;
    for _ in 0..e {
        pk = pk
            .checked_mul(p as u128)
            .ok_or(Error::Overflow("geometric sum"))?;
        sum = sum
            .checked_add(pk)
            .ok_or(Error::Overflow("geometric sum"))?;
    }
    Ok(sum)
}

/// `b(n) = ∏ a(p^β)` with `a(p^β) = 1 + p + ⋯ + p^{⌊β/2⌋}`.
pub fn b_multiplicative(f: &Factorization) -> Result<u64> {
    let b = f.factors().iter().try_fold(1u128, |acc, &(p, e)| {
        acc.checked_mul(geometric_sum(p, e / 2)?)
            .ok_or(Error::Overflow("b(n)"))
    })?;
    u64::try_from(b).map_err(|_| Error::Overflow("b(n)"))
}

/// `b(n)` as the sum of the square roots of the square divisors of `n`:
/// `Σ d` over `d` with `d² | n`.
pub fn b_via_square_divisors(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("b(n) is undefined for n = 0"));
    }
    Ok((1..=isqrt(n)).filter(|d| n.is_multiple_of(d * d)).sum())
}

/// `f(n) = √n` when `n` is a perfect square, else 0. Its Dirichlet series is
/// `ζ(2s − 1)` and `b = f ∗ 1`.
pub fn square_root_if_square(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        0
    }
}

/// Table of `a(k)` for `0 ≤ k ≤ limit` (index 0 holds 0), by sieving each
/// `d` over the multiples `k ≥ d²` of `d`.
pub fn small_divisor_sums_up_to(limit: u64) -> Vec<u64> {
    let len = usize::try_from(limit).expect("table limit exceeds address space") + 1;
    let mut table = vec![0u64; len];
    for d in 1..=isqrt(limit) as usize {
        for k in (d * d..len).step_by(d) {
            table[k] += d as u64;
        }
    }
    table
}

/// Table of `b(k)` for `0 ≤ k ≤ limit` (index 0 holds 0), by sieving each
/// `d` over the multiples of `d²`.
pub fn square_divisor_sums_up_to(limit: u64) -> Vec<u64> {
    let len = usize::try_from(limit).expect("table limit exceeds address space") + 1;
    let mut table = vec![0u64; len];
    for d in 1..=isqrt(limit) as usize {
        let sq = d * d;
        for k in (sq..len).step_by(sq) {
            table[k] += d as u64;
        }
    }
    table
}
