//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it every strategy runs sequentially. Results are
//! always returned in index order, so output does not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether `Parallel` actually uses worker threads in this build.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// `(start..end).map(f).collect()`, possibly in parallel.
pub fn map_range<T, F>(exec: Execution, start: usize, end: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (start..end).into_par_iter().map(f).collect(),
        _ => (start..end).map(f).collect(),
    }
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let seq = map_range(Execution::Sequential, 3, 200, |k| (k * k) as f64);
        let par = map_range(Execution::Parallel, 3, 200, |k| (k * k) as f64);
        assert_eq!(seq, par);
        assert_eq!(seq[0], 9.0);

        let items: Vec<u32> = (0..100).collect();
        assert_eq!(
            map_slice(Execution::Parallel, &items, |x| x + 1),
            map_slice(Execution::Sequential, &items, |x| x + 1)
        );
    }
}
