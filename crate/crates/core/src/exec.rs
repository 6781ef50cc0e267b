//! Sequential/parallel execution of the data-parallel inner loops.
//!
//! Every operation in the crate is pure, so loops over atoms, outcomes or
//! whole instances can run in any order. With the `parallel` feature the
//! helpers below dispatch to rayon once the loop is big enough to amortize
//! the fork-join overhead; without it they compile to plain iterators.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Work items below this count run sequentially even with `parallel`
/// enabled; rational arithmetic on desk-scale spaces is cheaper than a
/// fork-join.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 64;

#[cfg(feature = "parallel")]
pub(crate) fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Fallible variant; the first error wins (any error aborts the loop).
#[cfg(feature = "parallel")]
pub(crate) fn try_map_range<U, E, F>(n: usize, f: F) -> Result<Vec<U>, E>
where
    U: Send,
    E: Send,
    F: Fn(usize) -> Result<U, E> + Sync + Send,
{
    if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn try_map_range<U, E, F>(n: usize, f: F) -> Result<Vec<U>, E>
where
    U: Send,
    E: Send,
    F: Fn(usize) -> Result<U, E> + Sync + Send,
{
    (0..n).map(f).collect()
}
