//! Deterministic range-parallel reductions.
//!
//! A range is cut into fixed-size blocks independent of the worker count;
//! blocks are evaluated in parallel and merged in ascending order, so sums are
//! bit-identical for any number of threads.

use rayon::prelude::*;

/// Block length used for all range reductions.
pub const BLOCK: u64 = 256;

/// Maps every index of `lo..hi` (in parallel blocks) and returns results in order.
pub fn ordered_map<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    if hi <= lo {
        return Vec::new();
    }
    let blocks: Vec<(u64, u64)> = (lo..hi)
        .step_by(BLOCK as usize)
        .map(|s| (s, (s + BLOCK).min(hi)))
        .collect();
    let parts: Vec<Vec<T>> = blocks
        .into_par_iter()
        .map(|(s, e)| (s..e).map(&f).collect())
        .collect();
    parts.into_iter().flatten().collect()
}

/// `sum_{i in lo..hi} f(i)` with per-block partial sums merged in order.
pub fn ordered_sum<F>(lo: u64, hi: u64, f: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    if hi <= lo {
        return 0.0;
    }
    let blocks: Vec<(u64, u64)> = (lo..hi)
        .step_by(BLOCK as usize)
        .map(|s| (s, (s + BLOCK).min(hi)))
        .collect();
    let partials: Vec<f64> = blocks
        .into_par_iter()
        .map(|(s, e)| (s..e).map(&f).sum::<f64>())
        .collect();
    partials.into_iter().sum()
}

/// Runs `f` on a dedicated pool with `threads` workers.
pub fn with_threads<T: Send, F: FnOnce() -> T + Send>(threads: usize, f: F) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_are_identical_across_worker_counts() {
        let f = |i: u64| 1.0 / ((i as f64) + 0.1).powf(1.3);
        let one = with_threads(1, || ordered_sum(0, 100_000, f));
        let four = with_threads(4, || ordered_sum(0, 100_000, f));
        assert_eq!(one.to_bits(), four.to_bits());
        let m = with_threads(3, || ordered_map(5, 1000, |i| i * 2));
        assert_eq!(m, (5..1000).map(|i| i * 2).collect::<Vec<_>>());
        assert!(ordered_map(5, 5, |i| i).is_empty());
    }
}
