//! Order-preserving map over sample indices, on rayon when the `parallel`
//! feature is enabled and sequential otherwise.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How sweep and certification drivers evaluate independent samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool. Falls back to sequential without the `parallel` feature.
    #[default]
    Parallel,
}

/// Evaluates `f(0), …, f(n − 1)` and returns the results in index order.
pub fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}
