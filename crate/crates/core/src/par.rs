//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off. Output order always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether this build can run work on the rayon pool.
pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");

/// Threads the parallel paths can use; 1 without the `parallel` feature.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    1
}

/// Maps `f` over `items`, in parallel when available and `parallel` is set.
pub fn map_ordered<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Fills `out` with `f(i)` for `i` in `range`, in parallel when available
/// and `parallel` is set.
pub fn fill_range<F>(out: &mut Vec<u32>, range: std::ops::RangeInclusive<u32>, parallel: bool, f: F)
where
    F: Fn(u32) -> u32 + Sync + Send,
{
    out.clear();
    #[cfg(feature = "parallel")]
    if parallel {
        out.par_extend(range.into_par_iter().map(f));
        return;
    }
    let _ = parallel;
    out.extend(range.map(f));
}
