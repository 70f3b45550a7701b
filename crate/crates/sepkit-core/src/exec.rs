//! Execution-mode switch between the rayon data-parallel path and the
//! sequential fallback. The sequential path is always compiled; the parallel
//! path requires the `parallel` feature (on by default).

/// How batch work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Use the rayon thread pool when the `parallel` feature is enabled;
    /// falls back to sequential otherwise.
    #[default]
    Parallel,
    /// Single-threaded, deterministic reference path.
    Sequential,
}

/// Map `f` over `items`, preserving input order in the output.
pub fn map_collect<T, U, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

/// Number of worker threads the parallel mode would use.
pub fn effective_workers(mode: ExecMode) -> usize {
    match mode {
        ExecMode::Sequential => 1,
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                rayon::current_num_threads()
            }
            #[cfg(not(feature = "parallel"))]
            {
                1
            }
        }
    }
}

/// Run `f` inside a dedicated pool of `workers` threads (parallel feature
/// only); otherwise runs inline.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R: Send>(_workers: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map_collect(ExecMode::Sequential, items.clone(), |x| x * x);
        let par = map_collect(ExecMode::Parallel, items, |x| x * x);
        assert_eq!(seq, par);
    }
}
