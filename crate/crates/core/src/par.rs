//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the maps fan out over rayon's current
//! thread pool; without it they run as plain loops. Every entry point computes
//! each output slot from its index alone, so results are identical in both
//! builds and independent of the thread count. Reductions that care about
//! floating-point association order stay sequential at the call sites.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Collect `f(i)` for `i` in `0..n`, in index order.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Overwrite `out[i] = f(i)` for every index.
pub fn fill_indexed<T, F>(out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        out.par_iter_mut()
            .enumerate()
            .for_each(|(i, slot)| *slot = f(i));
    }
    #[cfg(not(feature = "parallel"))]
    {
        out.iter_mut().enumerate().for_each(|(i, slot)| *slot = f(i));
    }
}
