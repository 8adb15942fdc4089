//! Sequential or rayon-backed evaluation of independent index ranges.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How index sweeps are evaluated. `Parallel` falls back to sequential
/// execution when the crate is built without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
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
    /// True when this build can run `Parallel` on more than one thread.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Sum of `f(i)` over the range. Partial sums are exact, so the result
    /// does not depend on the evaluation order.
    pub fn sum<F>(self, range: Range<u64>, f: F) -> u128
    where
        F: Fn(u64) -> u128 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).sum(),
            _ => range.map(f).sum(),
        }
    }

    /// `f(i)` for each index, in index order.
    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).collect(),
            _ => range.map(f).collect(),
        }
    }

    /// True when `f(i)` holds for every index.
    pub fn all<F>(self, range: Range<usize>, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().all(f),
            _ => range.into_iter().all(f),
        }
    }
}
