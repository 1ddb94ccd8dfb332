//! Execution policy for data-parallel sweeps.
//!
//! Batch operations (brute-force oracles, residual grids, pair checks) take an
//! [`Execution`]. With the `parallel` feature they fan out on the rayon pool;
//! without it every policy runs sequentially. Results are identical either
//! way: parallel paths only combine exact integers or keep per-item results
//! in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Applies `f` to every item, keeping input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Applies `f` to every integer in `lo..=hi`, keeping order.
    pub fn map_range<R, F>(self, lo: u64, hi: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (lo..=hi).into_par_iter().map(f).collect();
        }
        (lo..=hi).map(f).collect()
    }

    /// Exact integer sum of `f(k)` over `lo..=hi`.
    pub fn sum_range<F>(self, lo: u64, hi: u64, f: F) -> u128
    where
        F: Fn(u64) -> u128 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (lo..=hi).into_par_iter().map(f).sum();
        }
        (lo..=hi).map(f).sum()
    }

    /// Maps every item through a fallible `f`. On failure, returns the error
    /// of the earliest failing item so both policies report the same error.
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}
