//! Acceptance criteria, one line each. Runs with `harness = false` so the
//! report is printed by `cargo test`; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use smalldiv::arith::{
    b_multiplicative, b_via_square_divisors, factorize, primes_up_to, small_divisor_sum,
    small_divisor_sums_up_to,
};
use smalldiv::dirichlet::{
    convergence_upper_bound, divergence_lower_bound, euler_product_b, inverse_square_tail,
    partial_dirichlet, partial_dirichlet_at, partial_power_sum, partial_power_sum_bound,
    sandwich_check, tail_bound_inverse_squares, zeta_bracket, Series, DEFAULT_ZETA_TERMS,
};
use smalldiv::summatory::{brute_prefix_sums, residual_grid, summatory_brute, summatory_exact};
use smalldiv::witness::{
    check_pairs, non_complete_counterexample, random_coprime_pairs, witness_report,
};
use smalldiv::Execution;

type Outcome = Result<String, String>;
/// Name, check, and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reference_values() -> Outcome {
    let a = |n| small_divisor_sum(n).unwrap();
    for (n, want) in [(24, 10), (36, 16), (864, 130), (72, 24)] {
        ensure(a(n) == want, || format!("a({n}) = {} != {want}", a(n)))?;
    }
    let b72 = b_multiplicative(&factorize(72).unwrap()).unwrap();
    ensure(b72 == 12, || format!("b(72) = {b72}"))?;
    let primes = primes_up_to(10_000);
    for &p in &primes {
        ensure(a(p) == 1, || format!("a({p}) = {}", a(p)))?;
    }
    Ok(format!(
        "a(24)=10 a(36)=16 a(864)=130 a(72)=24 b(72)=12, a(p)=1 for {} primes",
        primes.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let prefix = brute_prefix_sums(1_000_000, Execution::default()).unwrap();
    for x in 1..=10_000u64 {
        let exact = summatory_exact(x).unwrap();
        ensure(exact == prefix[x as usize], || {
            format!("x = {x}: {exact} != {}", prefix[x as usize])
        })?;
    }
    let mut rng = SplitMix64::seed_from_u64(2024);
    for _ in 0..50 {
        let x = rng.random_range(1..=1_000_000u64);
        let exact = summatory_exact(x).unwrap();
        ensure(exact == prefix[x as usize], || {
            format!("x = {x}: {exact} != {}", prefix[x as usize])
        })?;
    }
    // Spot-check the prefix table against direct oracle calls.
    for x in [1u64, 777_777, 1_000_000] {
        ensure(summatory_brute(x).unwrap() == prefix[x as usize], || {
            format!("prefix mismatch at {x}")
        })?;
    }
    Ok("x in 1..=10^4 and 50 seeded x <= 10^6 (seed 2024) agree exactly".into())
}

fn average_order() -> Outcome {
    let grid = [1_000u64, 10_000, 100_000, 1_000_000, 10_000_000];
    let reports = residual_grid(&grid, Execution::default()).unwrap();
    let mut prev_gap = f64::INFINITY;
    let mut worst = 0.0f64;
    for r in &reports {
        ensure(r.normalized_residual.abs() <= 1.0, || {
            format!(
                "x = {}: |normalized residual| = {}",
                r.x,
                r.normalized_residual.abs()
            )
        })?;
        let gap = (r.ratio() - 1.0).abs();
        ensure(gap < prev_gap, || {
            format!("x = {}: |ratio - 1| = {gap} not below {prev_gap}", r.x)
        })?;
        prev_gap = gap;
        worst = worst.max(r.normalized_residual.abs());
    }
    Ok(format!(
        "max |R(x)|/(x ln x) = {worst:.4} <= 1.0, |ratio-1| decreasing to {prev_gap:.3e}"
    ))
}

fn performance() -> Outcome {
    let x = 1_000_000_000_000u64;
    let start = Instant::now();
    let first = summatory_exact(x).unwrap();
    let elapsed = start.elapsed();
    let second = summatory_exact(x).unwrap();
    ensure(first == second, || {
        format!("runs differ: {first} vs {second}")
    })?;
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "S(10^12) = {first} in {:.3} s",
        elapsed.as_secs_f64()
    ))
}

fn divergence() -> Outcome {
    let cutoffs = [100u64, 1_000, 10_000, 100_000, 1_000_000];
    let sums = partial_dirichlet_at(Series::A, 1.5, &cutoffs).unwrap();
    for s in &sums {
        let bound = divergence_lower_bound(s.n_terms).unwrap();
        ensure(s.value >= bound, || {
            format!("N = {}: {} < {bound}", s.n_terms, s.value)
        })?;
    }
    let ln10 = 10f64.ln();
    let mut growths = Vec::new();
    for w in sums.windows(2).filter(|w| w[0].n_terms >= 10_000) {
        let growth = w[1].value - w[0].value;
        ensure(growth >= 2.0, || {
            format!("growth {growth} below 2.0 at N = {}", w[1].n_terms)
        })?;
        ensure((growth - ln10).abs() <= 0.15 * ln10, || {
            format!(
                "growth {growth} not within 15% of ln 10 at N = {}",
                w[1].n_terms
            )
        })?;
        growths.push(growth);
    }
    Ok(format!(
        "partial sums above 2 ln isqrt(N) - 2 zeta(3/2); per-decade growth {growths:.4?}"
    ))
}

fn convergence() -> Outcome {
    let mut parts = Vec::new();
    for sigma in [1.6, 1.75, 1.9] {
        let partial = partial_dirichlet(Series::A, sigma, 1_000_000)
            .unwrap()
            .value;
        let bound = convergence_upper_bound(sigma).unwrap();
        ensure(partial <= bound, || {
            format!("sigma = {sigma}: {partial} > {bound}")
        })?;
        parts.push(format!("{sigma}: {partial:.4} <= {bound:.4}"));
    }
    Ok(parts.join(", "))
}

fn euler_product() -> Outcome {
    let zz = zeta_bracket(5.0, DEFAULT_ZETA_TERMS).unwrap()
        * zeta_bracket(3.0, DEFAULT_ZETA_TERMS).unwrap();
    let prod = euler_product_b(3.0, 100_000).unwrap();
    let d1 = (prod - zz.mid()).abs();
    ensure(d1 < 1e-6, || format!("|product - zeta(5)zeta(3)| = {d1}"))?;
    let partial = partial_dirichlet(Series::B, 3.0, 100_000).unwrap().value;
    let d2 = (partial - zz.mid()).abs();
    ensure(d2 < 1e-4, || format!("|L_N(3, b) - zeta(5)zeta(3)| = {d2}"))?;
    Ok(format!(
        "product diff {d1:.2e} < 1e-6, b-series diff {d2:.2e} < 1e-4"
    ))
}

fn sandwich() -> Outcome {
    for sigma in [2.25, 2.5, 3.0, 4.0] {
        let r = sandwich_check(sigma, 100_000).unwrap();
        ensure(r.lower_ok && r.upper_ok, || {
            format!("sigma = {sigma}: {r:?}")
        })?;
    }
    Ok("sigma in {2.25, 2.5, 3, 4} at N = 10^5".into())
}

fn supermultiplicativity() -> Outcome {
    let pairs = random_coprime_pairs(10_000, 10_000, 42).unwrap();
    let summary = check_pairs(&pairs, Execution::default()).unwrap();
    ensure(summary.checked == 10_000 && summary.all_hold(), || {
        format!("failures: {:?}", summary.failures)
    })?;
    let c = non_complete_counterexample();
    ensure(c.a_product == 130 && c.a_m_times_a_n == 160, || {
        format!("{c:?}")
    })?;
    Ok(format!(
        "10^4 coprime pairs (seed 42) hold ({} equalities); a(864) = 130 < 160",
        summary.equalities
    ))
}

fn witnesses() -> Outcome {
    let mut prev = 0.0;
    let mut last = None;
    for m in 1..=7 {
        let w = witness_report(m).unwrap();
        ensure(w.ratio >= w.lower_bound, || {
            format!("m = {m}: {} < {}", w.ratio, w.lower_bound)
        })?;
        if m == 1 {
            ensure(w.ratio == w.lower_bound, || {
                format!("m = 1: {} != {}", w.ratio, w.lower_bound)
            })?;
        }
        ensure(w.ratio > prev, || {
            format!("m = {m}: ratio {} not above {prev}", w.ratio)
        })?;
        prev = w.ratio;
        last = Some(w);
    }
    let w = last.unwrap();
    Ok(format!(
        "ratios increase to {:.4} (bound {:.4}) at m = 7",
        w.ratio, w.lower_bound
    ))
}

fn b_identities() -> Outcome {
    let a = small_divisor_sums_up_to(100_000);
    for n in 1..=100_000u64 {
        let bm = b_multiplicative(&factorize(n).unwrap()).unwrap();
        let bs = b_via_square_divisors(n).unwrap();
        ensure(bm == bs, || format!("n = {n}: {bm} != {bs}"))?;
        ensure(bm <= a[n as usize], || {
            format!("n = {n}: b = {bm} > a = {}", a[n as usize])
        })?;
    }
    Ok("n <= 10^5".into())
}

fn auxiliary() -> Outcome {
    for (m, sigma) in [(1u64, 1.75), (100, 1.75), (10_000, 1.9)] {
        let direct = partial_power_sum(m, sigma);
        let bound = partial_power_sum_bound(m, sigma).unwrap();
        ensure(direct <= bound, || {
            format!("power sum M = {m}, sigma = {sigma}: {direct} > {bound}")
        })?;
    }
    for n in [1u64, 100, 1_000_000] {
        let direct = inverse_square_tail(n);
        let bound = tail_bound_inverse_squares(n);
        ensure(direct <= bound, || {
            format!("inverse squares n = {n}: {direct} > {bound}")
        })?;
    }
    Ok("power-sum and inverse-square tail bounds hold on their grids".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("reference-value regression", reference_values, 1),
        ("oracle equivalence", oracle_equivalence, 60),
        ("average order", average_order, 5),
        ("summatory performance", performance, 5),
        ("divergence at 3/2", divergence, 60),
        ("convergence on (3/2, 2)", convergence, 60),
        ("Euler product of b", euler_product, 10),
        ("sandwich inequality", sandwich, 30),
        ("supermultiplicativity", supermultiplicativity, 30),
        ("witness sequence", witnesses, 10),
        ("b identities", b_identities, 60),
        ("auxiliary inequalities", auxiliary, 5),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*limit) {
            outcome = Err(format!(
                "runtime {:.2} s exceeds {limit} s",
                elapsed.as_secs_f64()
            ));
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{tag} [{:>2}] {name} ({:.2} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        failed += outcome.is_err() as usize;
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
