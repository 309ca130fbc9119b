//! Execution strategy for data-parallel scans.
//!
//! Scans map an independent worker function over a list of inputs and then
//! stitch the outputs back together in input order, so parallelism can never
//! change the result. With the `parallel` feature enabled the map runs on
//! rayon; without it (or with `threads == Some(1)`) it runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How many worker threads a scan may use.
///
/// `None` means "let the runtime decide" (all cores under the `parallel`
/// feature, sequential otherwise); `Some(1)` forces the sequential path.
pub type Threads = Option<usize>;

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T, R, F>(items: Vec<T>, threads: Threads, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match threads {
        Some(1) => items.into_iter().map(f).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("failed to build worker pool");
            pool.install(|| items.into_par_iter().map(f).collect())
        }
        None => items.into_par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, R, F>(items: Vec<T>, _threads: Threads, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}
