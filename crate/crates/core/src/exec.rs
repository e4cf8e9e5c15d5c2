//! Execution policy for the data-parallel kernels.
//!
//! With the `parallel` feature (default) row-wise kernels and independent
//! case batches run on the rayon pool. Without it every kernel runs on the
//! calling thread. Both paths perform the same floating-point operations in
//! the same order per output element, so results are bitwise identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecPolicy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Fill `out` row by row (`row_len` elements each) using `f(row_index, row)`.
pub(crate) fn for_each_row<T, F>(policy: ExecPolicy, out: &mut [T], row_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if row_len == 0 {
        return;
    }
    match policy {
        ExecPolicy::Sequential => out
            .chunks_mut(row_len)
            .enumerate()
            .for_each(|(i, row)| f(i, row)),
        #[cfg(feature = "parallel")]
        ExecPolicy::Parallel => out
            .par_chunks_mut(row_len)
            .enumerate()
            .for_each(|(i, row)| f(i, row)),
    }
}

/// Order-preserving map over independent jobs.
pub fn map_jobs<T, R, F>(policy: ExecPolicy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match policy {
        ExecPolicy::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecPolicy::Parallel => items.par_iter().map(f).collect(),
    }
}
