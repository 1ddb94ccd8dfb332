//! Command-line front end: every library operation as a subcommand that
//! prints a CSV (default) or JSON table.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 overflow.

pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use smalldiv::arith::{
    b_multiplicative, factorize, sigma, small_divisor_sum_factored, tau, DEFAULT_DIVISOR_CAP,
};
use smalldiv::dirichlet::{
    convergence_upper_bound, divergence_lower_bound, euler_product_b, inverse_square_tail,
    partial_dirichlet, partial_power_sum, partial_power_sum_bound, sandwich_check,
    tail_bound_inverse_squares, zeta_bracket, Series, DEFAULT_PRIME_BOUND, DEFAULT_ZETA_TERMS,
};
use smalldiv::summatory::{
    residual_grid, sigma_summatory_report, summatory_brute, summatory_exact,
};
use smalldiv::witness::{
    check_pairs, liminf_witness, non_complete_counterexample, random_coprime_pairs,
    supermult_check, witness_report_with, WitnessConfig,
};
use smalldiv::{Error, Execution};

use output::{Format, OutputRecord, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "smalldiv",
    version,
    about = "Small-divisor sums, summatory functions and Dirichlet-series checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Brute,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    A,
    B,
}

impl From<SeriesArg> for Series {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::A => Series::A,
            SeriesArg::B => Series::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SummatoryFunction {
    /// Σ a(k) against ⅔·x^{3/2}
    A,
    /// Σ σ(k) against (π²/12)·x²
    Sigma,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum of the divisors d of N with d² ≤ N.
    A { n: u64 },
    /// Multiplicative companion b(N).
    B { n: u64 },
    /// Sum of all divisors of N.
    Sigma { n: u64 },
    /// Number of divisors of N.
    Tau { n: u64 },
    /// Prime factorization of N, one row per prime.
    Factor { n: u64 },
    /// S(x) = Σ_{k≤x} a(k).
    Summatory {
        #[arg(long)]
        x: u64,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
    },
    /// Residuals of the summatory function against its main term.
    Residual {
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<u64>,
        #[arg(long, value_enum, default_value = "a")]
        function: SummatoryFunction,
    },
    /// Partial sum of the Dirichlet series of a or b.
    Dirichlet {
        #[arg(long, value_enum)]
        series: SeriesArg,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long)]
        terms: u64,
    },
    /// Lower bound 2·ln(isqrt(N)) − 2ζ(3/2) against the partial sum at σ = 3/2.
    Divergence {
        #[arg(long)]
        terms: u64,
    },
    /// Upper bound (ζ(2(σ−1)) + 1)/(2 − σ) for 3/2 < σ < 2.
    Bound {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        /// Also compare against the partial sum with this many terms.
        #[arg(long)]
        terms: Option<u64>,
    },
    /// Truncated Euler product of L(σ, b) against ζ(2σ−1)ζ(σ).
    Euler {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        primes: u64,
    },
    /// Bracket check of ζ(2σ−1)ζ(σ) ≤ L(σ, a) ≤ ζ(σ−1).
    Sandwich {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long)]
        terms: u64,
    },
    /// Witnesses s_m = ∏_{k≤m} p_k² for k = 1..=M.
    Witness {
        #[arg(long)]
        m: usize,
        /// Allow M up to 9.
        #[arg(long)]
        extended: bool,
        /// Cap on the number of divisors enumerated for a(s_m).
        #[arg(long, default_value_t = DEFAULT_DIVISOR_CAP)]
        divisor_cap: u64,
    },
    /// a(mn) ≥ a(m)·a(n) on seeded random coprime pairs.
    Supermult {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        seed: u64,
        /// Print one row per pair instead of a summary.
        #[arg(long)]
        rows: bool,
    },
    /// a(24·36) = 130 < 160 = a(24)·a(36).
    Counterexample,
    /// Bracket for ζ(s).
    Zeta {
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, default_value_t = DEFAULT_ZETA_TERMS)]
        terms: u64,
    },
    /// Primes p ≤ BOUND with a(p).
    Liminf {
        #[arg(long)]
        bound: u64,
    },
    /// Σ_{y≤M} y^{1−σ} against M^{2−σ}/(2−σ).
    PowerSum {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
    },
    /// Σ_{isqrt(n) < x ≤ n} x^{−2} against 1/√n.
    InverseSquares {
        #[arg(long)]
        n: u64,
    },
}

/// Parses `args` (including the program name), runs the command and writes
/// its table to `out` or a diagnostic to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(record) => {
            // Rendered in full before writing so failures never leave partial output.
            let text = record.render(cli.format);
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "smalldiv: {e}");
            if e.is_overflow() {
                EXIT_OVERFLOW
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn single(command: &str, column: &str, n: u64, value: impl Into<Value>) -> OutputRecord {
    let mut rec = OutputRecord::new(command, &["n", column]).param("n", n);
    rec.push(vec![n.into(), value.into()]);
    rec
}

fn execute(command: &Command) -> Result<OutputRecord, Error> {
    Ok(match *command {
        Command::A { n } => single("a", "a", n, small_divisor_sum_factored(&factorize(n)?)?),
        Command::B { n } => single("b", "b", n, b_multiplicative(&factorize(n)?)?),
        Command::Sigma { n } => single("sigma", "sigma", n, sigma(&factorize(n)?)?),
        Command::Tau { n } => single("tau", "tau", n, tau(&factorize(n)?)),
        Command::Factor { n } => {
            let f = factorize(n)?;
            let mut rec = OutputRecord::new("factor", &["n", "prime", "exponent"]).param("n", n);
            for &(p, e) in f.factors() {
                rec.push(vec![n.into(), p.into(), e.into()]);
            }
            rec
        }
        Command::Summatory { x, method } => summatory(x, method)?,
        Command::Residual {
            ref points,
            function,
        } => residual(points, function)?,
        Command::Dirichlet {
            series,
            sigma,
            terms,
        } => {
            let d = partial_dirichlet(series.into(), sigma, terms)?;
            let full = d.full_series();
            let mut rec = OutputRecord::new(
                "dirichlet",
                &[
                    "series",
                    "sigma",
                    "n_terms",
                    "value",
                    "tail_lo",
                    "tail_hi",
                    "series_lo",
                    "series_hi",
                ],
            )
            .param("series", d.series.name())
            .param("sigma", sigma)
            .param("terms", terms);
            rec.push(vec![
                d.series.name().into(),
                sigma.into(),
                terms.into(),
                d.value.into(),
                d.tail.map(|t| t.lo()).into(),
                d.tail.map(|t| t.hi()).into(),
                full.map(|b| b.lo()).into(),
                full.map(|b| b.hi()).into(),
            ]);
            rec
        }
        Command::Divergence { terms } => {
            let bound = divergence_lower_bound(terms)?;
            let partial = partial_dirichlet(Series::A, 1.5, terms)?.value;
            let mut rec = OutputRecord::new(
                "divergence",
                &["n_terms", "partial_sum", "lower_bound", "holds"],
            )
            .param("terms", terms);
            rec.push(vec![
                terms.into(),
                partial.into(),
                bound.into(),
                (partial >= bound).into(),
            ]);
            rec
        }
        Command::Bound { sigma, terms } => {
            let bound = convergence_upper_bound(sigma)?;
            let partial = terms
                .map(|n| partial_dirichlet(Series::A, sigma, n).map(|d| d.value))
                .transpose()?;
            let mut rec = OutputRecord::new(
                "bound",
                &["sigma", "upper_bound", "n_terms", "partial_sum", "holds"],
            )
            .param("sigma", sigma)
            .param("terms", terms);
            rec.push(vec![
                sigma.into(),
                bound.into(),
                terms.into(),
                partial.into(),
                partial.map(|p| p <= bound).into(),
            ]);
            rec
        }
        Command::Euler { sigma, primes } => {
            let product = euler_product_b(sigma, primes)?;
            let zz = zeta_bracket(2.0 * sigma - 1.0, DEFAULT_ZETA_TERMS)?
                * zeta_bracket(sigma, DEFAULT_ZETA_TERMS)?;
            let mut rec = OutputRecord::new(
                "euler",
                &[
                    "sigma",
                    "prime_bound",
                    "product",
                    "zeta_product_lo",
                    "zeta_product_hi",
                    "difference",
                ],
            )
            .param("sigma", sigma)
            .param("primes", primes);
            rec.push(vec![
                sigma.into(),
                primes.into(),
                product.into(),
                zz.lo().into(),
                zz.hi().into(),
                (product - zz.mid()).into(),
            ]);
            rec
        }
        Command::Sandwich { sigma, terms } => {
            let r = sandwich_check(sigma, terms)?;
            let mut rec = OutputRecord::new(
                "sandwich",
                &[
                    "sigma",
                    "n_terms",
                    "lower_ok",
                    "upper_ok",
                    "zeta_product_lo",
                    "zeta_product_hi",
                    "series_lo",
                    "series_hi",
                    "zeta_shifted_lo",
                    "zeta_shifted_hi",
                ],
            )
            .param("sigma", sigma)
            .param("terms", terms);
            rec.push(vec![
                sigma.into(),
                terms.into(),
                r.lower_ok.into(),
                r.upper_ok.into(),
                r.zeta_product.lo().into(),
                r.zeta_product.hi().into(),
                r.series.lo().into(),
                r.series.hi().into(),
                r.zeta_shifted.lo().into(),
                r.zeta_shifted.hi().into(),
            ]);
            rec
        }
        Command::Witness {
            m,
            extended,
            divisor_cap,
        } => {
            let config = WitnessConfig {
                extended,
                divisor_cap,
            };
            // Validate the largest index first so errors never follow partial work.
            witness_report_with(m, config)?;
            let mut rec =
                OutputRecord::new("witness", &["m", "s_m", "a_value", "ratio", "lower_bound"])
                    .param("m", m)
                    .param("extended", extended);
            for k in 1..=m {
                let w = witness_report_with(k, config)?;
                rec.push(vec![
                    k.into(),
                    w.s_m.into(),
                    w.a_value.into(),
                    w.ratio.into(),
                    w.lower_bound.into(),
                ]);
            }
            rec
        }
        Command::Supermult {
            trials,
            max,
            seed,
            rows,
        } => {
            let pairs = random_coprime_pairs(trials, max, seed)?;
            if rows {
                let checks =
                    Execution::default().try_map(&pairs, |&(m, n)| supermult_check(m, n))?;
                let mut rec =
                    OutputRecord::new("supermult", &["seed", "m", "n", "a_mn", "a_m_a_n", "holds"])
                        .param("trials", trials)
                        .param("max", max)
                        .param("seed", seed);
                for c in checks {
                    rec.push(vec![
                        seed.into(),
                        c.m.into(),
                        c.n.into(),
                        c.lhs.into(),
                        c.rhs.into(),
                        c.holds.into(),
                    ]);
                }
                rec
            } else {
                let s = check_pairs(&pairs, Execution::default())?;
                let mut rec = OutputRecord::new(
                    "supermult",
                    &[
                        "seed",
                        "trials",
                        "max",
                        "checked",
                        "equalities",
                        "failures",
                        "all_hold",
                    ],
                )
                .param("trials", trials)
                .param("max", max)
                .param("seed", seed);
                rec.push(vec![
                    seed.into(),
                    trials.into(),
                    max.into(),
                    s.checked.into(),
                    s.equalities.into(),
                    s.failures.len().into(),
                    s.all_hold().into(),
                ]);
                rec
            }
        }
        Command::Counterexample => {
            let c = non_complete_counterexample();
            let mut rec = OutputRecord::new(
                "counterexample",
                &[
                    "m",
                    "n",
                    "gcd",
                    "product",
                    "a_product",
                    "a_m_times_a_n",
                    "a_product_below",
                ],
            );
            rec.push(vec![
                c.m.into(),
                c.n.into(),
                c.gcd.into(),
                c.product.into(),
                c.a_product.into(),
                c.a_m_times_a_n.into(),
                (c.a_product < c.a_m_times_a_n).into(),
            ]);
            rec
        }
        Command::Zeta { s, terms } => {
            let z = zeta_bracket(s, terms)?;
            let mut rec = OutputRecord::new("zeta", &["s", "n_terms", "lo", "hi", "mid", "width"])
                .param("s", s)
                .param("terms", terms);
            rec.push(vec![
                s.into(),
                terms.into(),
                z.lo().into(),
                z.hi().into(),
                z.mid().into(),
                z.width().into(),
            ]);
            rec
        }
        Command::Liminf { bound } => {
            let pairs = liminf_witness(bound)?;
            let mut rec = OutputRecord::new("liminf", &["p", "a"]).param("bound", bound);
            for (p, a) in pairs {
                rec.push(vec![p.into(), a.into()]);
            }
            rec
        }
        Command::PowerSum { m, sigma } => {
            let bound = partial_power_sum_bound(m, sigma)?;
            let direct = partial_power_sum(m, sigma);
            let mut rec =
                OutputRecord::new("power-sum", &["m", "sigma", "direct_sum", "bound", "holds"])
                    .param("m", m)
                    .param("sigma", sigma);
            rec.push(vec![
                m.into(),
                sigma.into(),
                direct.into(),
                bound.into(),
                (direct <= bound).into(),
            ]);
            rec
        }
        Command::InverseSquares { n } => {
            if n == 0 {
                return Err(Error::InvalidInput("n must be >= 1".into()));
            }
            let bound = tail_bound_inverse_squares(n);
            let direct = inverse_square_tail(n);
            let mut rec =
                OutputRecord::new("inverse-squares", &["n", "direct_sum", "bound", "holds"])
                    .param("n", n);
            rec.push(vec![
                n.into(),
                direct.into(),
                bound.into(),
                (direct <= bound).into(),
            ]);
            rec
        }
    })
}

fn summatory(x: u64, method: Method) -> Result<OutputRecord, Error> {
    let (columns, row): (&[&str], Vec<Value>) = match method {
        Method::Exact => (&["x", "exact"], vec![x.into(), summatory_exact(x)?.into()]),
        Method::Brute => (&["x", "brute"], vec![x.into(), summatory_brute(x)?.into()]),
        Method::Both => {
            let exact = summatory_exact(x)?;
            let brute = summatory_brute(x)?;
            (
                &["x", "exact", "brute", "match"],
                vec![
                    x.into(),
                    exact.into(),
                    brute.into(),
                    (exact == brute).into(),
                ],
            )
        }
    };
    let method_name = match method {
        Method::Exact => "exact",
        Method::Brute => "brute",
        Method::Both => "both",
    };
    let mut rec = OutputRecord::new("summatory", columns)
        .param("x", x)
        .param("method", method_name);
    rec.push(row);
    Ok(rec)
}

fn residual(points: &[u64], function: SummatoryFunction) -> Result<OutputRecord, Error> {
    let joined = points
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    match function {
        SummatoryFunction::A => {
            let reports = residual_grid(points, Execution::default())?;
            let mut rec = OutputRecord::new(
                "residual",
                &[
                    "x",
                    "s_exact",
                    "main_term",
                    "residual",
                    "normalized_residual",
                ],
            )
            .param("points", joined.as_str())
            .param("function", "a");
            for r in reports {
                rec.push(vec![
                    r.x.into(),
                    r.s_exact.into(),
                    r.main_term.into(),
                    r.residual.into(),
                    r.normalized_residual.into(),
                ]);
            }
            Ok(rec)
        }
        SummatoryFunction::Sigma => {
            let reports = Execution::default().try_map(points, |&x| sigma_summatory_report(x))?;
            let mut rec = OutputRecord::new(
                "residual",
                &["x", "s_exact", "main_term", "residual", "ratio"],
            )
            .param("points", joined.as_str())
            .param("function", "sigma");
            for r in reports {
                rec.push(vec![
                    r.x.into(),
                    r.s_exact.into(),
                    r.main_term.into(),
                    r.residual.into(),
                    r.ratio.into(),
                ]);
            }
            Ok(rec)
        }
    }
}
