//! Feature-gated data-parallel helpers.
//!
//! With the `parallel` feature (default) the helpers dispatch to rayon;
//! without it they run the same closures sequentially, so every caller is
//! oblivious to the build configuration.

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Maps `f` over row indices, writing each result into the corresponding
/// mutable row chunk of `rows` (each chunk has length `width`).
#[cfg(feature = "parallel")]
pub(crate) fn fill_rows<F>(rows: &mut [f64], width: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    use rayon::prelude::*;
    rows.par_chunks_mut(width)
        .enumerate()
        .for_each(|(i, chunk)| f(i, chunk));
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn fill_rows<F>(rows: &mut [f64], width: usize, f: F)
where
    F: Fn(usize, &mut [f64]),
{
    for (i, chunk) in rows.chunks_mut(width).enumerate() {
        f(i, chunk);
    }
}
