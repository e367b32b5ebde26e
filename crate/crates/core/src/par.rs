//! Order-preserving data-parallel map. With the `parallel` feature the work
//! runs on the rayon pool; without it, or through [`map_sequential`], it
//! runs on the calling thread. Results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    map_sequential(items, f)
}

pub fn map_sequential<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Number of worker threads `map` uses.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    return rayon::current_num_threads();
    #[cfg(not(feature = "parallel"))]
    1
}

#[cfg(test)]
mod tests {
    #[test]
    fn same_order_both_ways() {
        let xs: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x * x % 97;
        assert_eq!(super::map(&xs, f), super::map_sequential(&xs, f));
        assert!(super::workers() >= 1);
    }
}
