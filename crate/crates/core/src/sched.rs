//! Execution-mode plumbing: every exhaustive sweep in the crate funnels
//! through these helpers, so the data-parallel and sequential code paths stay
//! byte-for-byte identical in their results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Sequential,
    /// Rayon work-stealing; falls back to sequential when the `parallel`
    /// feature is disabled.
    Parallel,
}

impl Mode {
    pub fn default_mode() -> Mode {
        if cfg!(feature = "parallel") {
            Mode::Parallel
        } else {
            Mode::Sequential
        }
    }
}

/// Map a function over indexed items and collect results in index order.
pub fn map_indexed<T, F>(mode: Mode, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Mode::Parallel {
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..count).map(f).collect()
}

/// `true` iff the predicate holds for every index.
pub fn all_indexed<F>(mode: Mode, count: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Mode::Parallel {
        return (0..count).into_par_iter().all(f);
    }
    let _ = mode;
    (0..count).all(f)
}

/// First index-ordered failure witness, if any.
pub fn find_failure<T, F>(mode: Mode, count: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Mode::Parallel {
        return (0..count)
            .into_par_iter()
            .filter_map(f)
            .reduce_with(|a, _b| a);
    }
    let _ = mode;
    (0..count).filter_map(f).next()
}

/// Flat-map over indices, preserving index-major order.
pub fn flat_map_indexed<T, F>(mode: Mode, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Mode::Parallel {
        return (0..count).into_par_iter().flat_map_iter(f).collect();
    }
    let _ = mode;
    (0..count).flat_map(f).collect()
}
