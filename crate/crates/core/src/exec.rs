//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) work is spread over rayon's pool;
//! without it the same closures run sequentially. Results always come back in
//! index order, so reductions downstream are bit-identical either way.

/// `(0..n).map(f)` collected in order, possibly in parallel.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `xs.iter().map(f)` collected in order, possibly in parallel.
pub fn map_slice<S, T, F>(xs: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        xs.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        xs.iter().map(f).collect()
    }
}

/// Sequential reference implementation of [`map_indexed`]; always available so
/// benchmarks and tests can compare both paths in one build.
pub fn map_indexed_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Execution strategy for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// rayon when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Auto,
    Sequential,
}

/// [`map_indexed`] or [`map_indexed_sequential`] depending on `exec`.
pub fn map_indexed_with<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Exec::Auto => map_indexed(n, f),
        Exec::Sequential => map_indexed_sequential(n, f),
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v = map_indexed(1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
        assert_eq!(v, map_indexed_sequential(1000, |i| i * i));
        let w = map_slice(&[1.0, 2.0, 3.0], |x| x * 2.0);
        assert_eq!(w, vec![2.0, 4.0, 6.0]);
    }
}
