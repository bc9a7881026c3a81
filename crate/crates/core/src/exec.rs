//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the loops fan out over rayon's
//! global pool. Without it [`Execution::Parallel`] silently degrades to the
//! sequential path. Every helper here produces results that are independent
//! of the strategy: first-hit searches return the smallest matching index and
//! reductions must be associative and commutative.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
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
    /// Whether this strategy actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Smallest index in `0..n` satisfying `pred`.
    pub fn find_first<F>(self, n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_first(|&i| pred(i));
        }
        (0..n).find(|&i| pred(i))
    }

    /// Map every index in `0..n` and fold the results with `reduce`.
    pub fn map_reduce<T, M, R>(self, n: usize, identity: T, map: M, reduce: R) -> T
    where
        T: Clone + Send + Sync,
        M: Fn(usize) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n)
                .into_par_iter()
                .map(&map)
                .reduce(|| identity.clone(), &reduce);
        }
        (0..n).map(map).fold(identity, reduce)
    }

    /// Map `0..n` preserving order.
    pub fn map_collect<T, M>(self, n: usize, map: M) -> Vec<T>
    where
        T: Send,
        M: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(map).collect();
        }
        (0..n).map(map).collect()
    }
}

/// Size the global pool. Must be called before any parallel work; later
/// calls are ignored. A no-op without the `parallel` feature.
pub fn set_thread_count(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        // Fails only when the pool was already initialised.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
