//! Real-axis Dirichlet series: `ζ` enclosures, partial sums of
//! `L(σ, a)` and `L(σ, b)`, the Euler product of `L(σ, b)`, and the
//! bounds that locate the abscissa of convergence of `L(σ, a)` at 3/2.
//!
//! Brackets are widened by a few ulps after every arithmetic step. This is
//! an enclosure that holds in practice at the tolerances used here, not
//! formal interval arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use crate::arith::{isqrt, primes_up_to, small_divisor_sums_up_to, square_divisor_sums_up_to};
use crate::{Error, Result};

/// Abscissa of convergence of `L(σ, a)`.
pub const ABSCISSA: f64 = 1.5;

/// Terms used by [`zeta_bracket`] when the caller does not choose.
pub const DEFAULT_ZETA_TERMS: u64 = 10_000;

/// Default prime bound for [`euler_product_b`].
pub const DEFAULT_PRIME_BOUND: u64 = 100_000;

const WIDEN_ULPS: u32 = 4;

/// Closed interval `[lo, hi]` of finite `f64` values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::invalid(format!("not a bracket: [{lo}, {hi}]")));
        }
        Ok(Bracket { lo, hi })
    }

    pub fn point(v: f64) -> Self {
        assert!(v.is_finite(), "bracket point must be finite");
        Bracket { lo: v, hi: v }
    }

    /// `[center − radius, center + radius]`, widened outward.
    pub fn around(center: f64, radius: f64) -> Self {
        Bracket {
            lo: center - radius,
            hi: center + radius,
        }
        .widened(WIDEN_ULPS)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_bracket(&self, other: &Bracket) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Bracket) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Moves each endpoint outward by `ulps` units in the last place.
    pub fn widened(self, ulps: u32) -> Self {
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Bracket { lo, hi }
    }

    /// `1 / self` for a strictly positive bracket.
    pub fn recip(self) -> Result<Self> {
        if self.lo <= 0.0 {
            return Err(Error::invalid("reciprocal of a bracket touching zero"));
        }
        Ok(Bracket {
            lo: 1.0 / self.hi,
            hi: 1.0 / self.lo,
        }
        .widened(WIDEN_ULPS))
    }
}

impl Add for Bracket {
    type Output = Bracket;

    fn add(self, rhs: Bracket) -> Bracket {
        Bracket {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
        .widened(WIDEN_ULPS)
    }
}

impl Sub for Bracket {
    type Output = Bracket;

    fn sub(self, rhs: Bracket) -> Bracket {
        Bracket {
            lo: self.lo - rhs.hi,
            hi: self.hi - rhs.lo,
        }
        .widened(WIDEN_ULPS)
    }
}

impl Mul for Bracket {
    type Output = Bracket;

    fn mul(self, rhs: Bracket) -> Bracket {
        let products = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = products.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = products.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Bracket { lo, hi }.widened(WIDEN_ULPS)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Neumaier-compensated sum of `k^{-s}` for `k = n−1, …, 1`.
fn compensated_power_sum(s: f64, n: u64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in (1..n).rev() {
        let term = (k as f64).powf(-s);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Enclosure of `ζ(s)` for real `s > 1`.
///
/// Euler–Maclaurin at `N = n_terms`:
/// `Σ_{k<N} k^{−s} + N^{1−s}/(s−1) + N^{−s}/2 + s·N^{−s−1}/12`, with radius
/// the magnitude of the next correction `s(s+1)(s+2)·N^{−s−3}/720` plus a
/// few ulps of the value for rounding in the power sum.
pub fn zeta_bracket(s: f64, n_terms: u64) -> Result<Bracket> {
    if !s.is_finite() || s <= 1.0 {
        return Err(Error::invalid(format!("zeta(s) needs s > 1 (got {s})")));
    }
    if n_terms < 10 {
        return Err(Error::invalid(format!(
            "zeta needs at least 10 terms (got {n_terms})"
        )));
    }
    let n = n_terms as f64;
    let head = compensated_power_sum(s, n_terms);
    let n_pow = n.powf(-s);
    let correction = n * n_pow / (s - 1.0) + n_pow / 2.0 + s * n_pow / (12.0 * n);
    let value = head + correction;
    let next_term = s * (s + 1.0) * (s + 2.0) * n_pow / (720.0 * n * n * n);
    let rounding = 4.0 * f64::EPSILON * value;
    Ok(Bracket::around(value, next_term + rounding))
}

fn default_zeta(s: f64) -> Result<Bracket> {
    zeta_bracket(s, DEFAULT_ZETA_TERMS)
}

/// Which coefficient sequence a Dirichlet series uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    /// `a(n)`, the small-divisor sum.
    A,
    /// `b(n)`, the multiplicative companion `∏ a(p^β)`.
    B,
}

impl Series {
    pub fn name(self) -> &'static str {
        match self {
            Series::A => "a",
            Series::B => "b",
        }
    }

    fn coefficients(self, limit: u64) -> Vec<u64> {
        match self {
            Series::A => small_divisor_sums_up_to(limit),
            Series::B => square_divisor_sums_up_to(limit),
        }
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Series::A),
            "b" | "B" => Ok(Series::B),
            other => Err(Error::invalid(format!(
                "unknown series `{other}` (expected a or b)"
            ))),
        }
    }
}

/// `Σ_{k≤N} f(k)/k^σ` for `f = a` or `f = b`, with a tail enclosure when
/// one is available.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPartialSum {
    pub series: Series,
    pub sigma: f64,
    pub n_terms: u64,
    pub value: f64,
    /// Bounds on `Σ_{k>N} f(k)/k^σ`; present only for `σ > 2`.
    pub tail: Option<Bracket>,
}

impl DirichletPartialSum {
    /// Enclosure of the full series `L(σ, f)`, when the tail is bounded.
    pub fn full_series(&self) -> Option<Bracket> {
        self.tail.map(|t| {
            Bracket {
                lo: self.value,
                hi: self.value + t.hi,
            }
            .widened(WIDEN_ULPS)
        })
    }
}

/// `0 ≤ Σ_{k>N} k^{1−σ} ≤ N^{2−σ}/(σ−2)` for `σ > 2`, which bounds both
/// tails since `b(k) ≤ a(k) ≤ k`.
fn linear_tail(sigma: f64, n_terms: u64) -> Option<Bracket> {
    (sigma > 2.0).then(|| {
        let hi = (n_terms as f64).powf(2.0 - sigma) / (sigma - 2.0);
        let hi = Bracket::point(hi).widened(WIDEN_ULPS).hi();
        Bracket { lo: 0.0, hi }
    })
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::invalid(format!(
            "sigma must be a positive real (got {sigma})"
        )));
    }
    Ok(())
}

/// Partial sum over `k = 1..=n_terms`, accumulated in ascending `k`.
pub fn partial_dirichlet(series: Series, sigma: f64, n_terms: u64) -> Result<DirichletPartialSum> {
    let mut sums = partial_dirichlet_at(series, sigma, &[n_terms])?;
    Ok(sums.remove(0))
}

/// Partial sums at several cutoffs from a single ascending pass. Each value
/// is bit-identical to a separate [`partial_dirichlet`] call.
pub fn partial_dirichlet_at(
    series: Series,
    sigma: f64,
    cutoffs: &[u64],
) -> Result<Vec<DirichletPartialSum>> {
    check_sigma(sigma)?;
    if cutoffs.is_empty() || cutoffs.contains(&0) {
        return Err(Error::invalid("cutoffs must be nonempty and positive"));
    }
    if cutoffs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("cutoffs must be nondecreasing"));
    }
    let max = *cutoffs.last().unwrap();
    let coeffs = series.coefficients(max);
    let mut out = Vec::with_capacity(cutoffs.len());
    let mut value = 0.0f64;
    let mut k = 0u64;
    for &n in cutoffs {
        while k < n {
            k += 1;
            value += coeffs[k as usize] as f64 / (k as f64).powf(sigma);
        }
        out.push(DirichletPartialSum {
            series,
            sigma,
            n_terms: n,
            value,
            tail: linear_tail(sigma, n),
        });
    }
    Ok(out)
}

/// `2·ln(isqrt(n)) − 2·ζ(3/2)`, using the upper end of the `ζ(3/2)` bracket
/// so the result stays below `Σ_{k≤n} a(k)/k^{3/2}`.
pub fn divergence_lower_bound(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "divergence bound needs n >= 2 (got {n})"
        )));
    }
    let zeta = default_zeta(ABSCISSA)?;
    let log_term = Bracket::around(2.0 * (isqrt(n) as f64).ln(), 0.0);
    Ok((log_term - Bracket::point(2.0 * zeta.hi())).lo())
}

/// `(ζ(2(σ−1)) + 1)/(2 − σ)` for `3/2 < σ < 2`, from the upper end of the
/// `ζ` bracket; bounds every partial sum of `L(σ, a)`.
pub fn convergence_upper_bound(sigma: f64) -> Result<f64> {
    if !(sigma > ABSCISSA && sigma < 2.0) {
        return Err(Error::invalid(format!(
            "convergence bound needs 1.5 < sigma < 2 (got {sigma})"
        )));
    }
    let zeta = default_zeta(2.0 * (sigma - 1.0))?;
    let numerator = Bracket::point(zeta.hi()) + Bracket::point(1.0);
    let denominator = Bracket::around(2.0 - sigma, 0.0);
    Ok((numerator * denominator.recip()?).hi())
}

/// `∏_{p ≤ prime_bound} (1 − p^{1−2σ})^{−1}(1 − p^{−σ})^{−1}`, truncating
/// `L(σ, b) = ζ(2σ − 1)·ζ(σ)`.
pub fn euler_product_b(sigma: f64, prime_bound: u64) -> Result<f64> {
    if !sigma.is_finite() || sigma <= ABSCISSA {
        return Err(Error::invalid(format!(
            "Euler product needs sigma > 1.5 (got {sigma})"
        )));
    }
    if prime_bound < 2 {
        return Err(Error::invalid(format!(
            "prime bound must be >= 2 (got {prime_bound})"
        )));
    }
    Ok(primes_up_to(prime_bound)
        .into_iter()
        .map(|p| {
            let p = p as f64;
            1.0 / ((1.0 - p.powf(1.0 - 2.0 * sigma)) * (1.0 - p.powf(-sigma)))
        })
        .product())
}

/// Bracket form of `ζ(2σ−1)ζ(σ) ≤ L(σ, a) ≤ ζ(σ−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub sigma: f64,
    pub n_terms: u64,
    /// `ζ(2σ−1)·ζ(σ)`.
    pub zeta_product: Bracket,
    /// `L(σ, a)` as `[partial sum, partial sum + tail bound]`.
    pub series: Bracket,
    /// `ζ(σ−1)`.
    pub zeta_shifted: Bracket,
    /// `zeta_product.lo ≤ series.hi`.
    pub lower_ok: bool,
    /// `series.lo ≤ zeta_shifted.hi`.
    pub upper_ok: bool,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

pub fn sandwich_check(sigma: f64, n_terms: u64) -> Result<SandwichReport> {
    if !sigma.is_finite() || sigma <= 2.0 {
        return Err(Error::invalid(format!(
            "sandwich check needs sigma > 2 (got {sigma})"
        )));
    }
    let partial = partial_dirichlet(Series::A, sigma, n_terms)?;
    let series = partial.full_series().expect("tail exists for sigma > 2");
    let zeta_product = default_zeta(2.0 * sigma - 1.0)? * default_zeta(sigma)?;
    let zeta_shifted = default_zeta(sigma - 1.0)?;
    Ok(SandwichReport {
        sigma,
        n_terms,
        zeta_product,
        series,
        zeta_shifted,
        lower_ok: zeta_product.lo() <= series.hi(),
        upper_ok: series.lo() <= zeta_shifted.hi(),
    })
}

/// `1/√n`, an upper bound for `Σ_{x=isqrt(n)+1}^{n} x^{−2}`.
pub fn tail_bound_inverse_squares(n: u64) -> f64 {
    1.0 / (n as f64).sqrt()
}

/// `Σ_{x=isqrt(n)+1}^{n} x^{−2}` summed directly.
pub fn inverse_square_tail(n: u64) -> f64 {
    (isqrt(n) + 1..=n)
        .map(|x| 1.0 / (x as f64 * x as f64))
        .sum()
}

/// `M^{2−σ}/(2−σ)` for `3/2 < σ < 2`, an upper bound for `Σ_{y=1}^{M} y^{1−σ}`.
pub fn partial_power_sum_bound(m: u64, sigma: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("M must be >= 1"));
    }
    if !(sigma > ABSCISSA && sigma < 2.0) {
        return Err(Error::invalid(format!(
            "power-sum bound needs 1.5 < sigma < 2 (got {sigma})"
        )));
    }
    Ok((m as f64).powf(2.0 - sigma) / (2.0 - sigma))
}

/// `Σ_{y=1}^{M} y^{1−σ}` summed directly.
pub fn partial_power_sum(m: u64, sigma: f64) -> f64 {
    (1..=m).map(|y| (y as f64).powf(1.0 - sigma)).sum()
}
