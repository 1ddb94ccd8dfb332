//! Small-divisor sums and their companions.
//!
//! `a(n)` adds the divisors `d` of `n` with `d² ≤ n`. This crate computes
//! `a(n)` together with the multiplicative companion `b(n)`, `σ(n)` and
//! `τ(n)`, evaluates `S(x) = Σ_{k≤x} a(k)` exactly in `O(√x)` time, and
//! checks the known asymptotic and Dirichlet-series bounds numerically.
//!
//! Modules:
//! - [`arith`]: factorization, divisors, and the arithmetic functions.
//! - [`summatory`]: exact summatory functions and residual reports.
//! - [`dirichlet`]: `ζ` brackets, Dirichlet partial sums and Euler products.
//! - [`witness`]: constructive witnesses and supermultiplicativity checks.
//! - [`exec`]: sequential/parallel execution switch for batch sweeps.

pub mod arith;
pub mod dirichlet;
mod error;
pub mod exec;
pub mod summatory;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Execution;
