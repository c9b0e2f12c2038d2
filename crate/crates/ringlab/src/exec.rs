//! Index-range execution helpers.
//!
//! Every whole-ring sweep in this crate runs over `0..n` element indices.
//! With the `parallel` feature (default) these fan out through rayon; without
//! it they fall back to the sequential versions in [`seq`]. All reductions are
//! order-insensitive (min-index, all/any, position-indexed collect), so both
//! lanes produce identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_range<T: Send>(n: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<T>(n: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    seq::map_range(n, f)
}

/// Smallest index in `0..n` satisfying `pred`, if any.
#[cfg(feature = "parallel")]
pub fn min_matching(n: u64, pred: impl Fn(u64) -> bool + Sync + Send) -> Option<u64> {
    (0..n).into_par_iter().filter(|&i| pred(i)).min()
}

#[cfg(not(feature = "parallel"))]
pub fn min_matching(n: u64, pred: impl Fn(u64) -> bool + Sync + Send) -> Option<u64> {
    seq::min_matching(n, pred)
}

/// True iff `pred` holds on every index in `0..n`.
#[cfg(feature = "parallel")]
pub fn all_range(n: u64, pred: impl Fn(u64) -> bool + Sync + Send) -> bool {
    (0..n).into_par_iter().all(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn all_range(n: u64, pred: impl Fn(u64) -> bool + Sync + Send) -> bool {
    seq::all_range(n, pred)
}

/// Sequential versions of the helpers above.
///
/// These stay compiled under every feature combination; the bench suite runs
/// the same sweep closures through both lanes to measure the fan-out win.
pub mod seq {
    pub fn map_range<T>(n: u64, f: impl Fn(u64) -> T) -> Vec<T> {
        (0..n).map(f).collect()
    }

    pub fn min_matching(n: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
        // Ascending scan: first hit is the minimum.
        (0..n).find(|&i| pred(i))
    }

    pub fn all_range(n: u64, pred: impl Fn(u64) -> bool) -> bool {
        (0..n).all(pred)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_seq_agree() {
        let f = |i: u64| i * i % 7;
        assert_eq!(map_range(50, f), seq::map_range(50, f));
        let p = |i: u64| i % 13 == 11;
        assert_eq!(min_matching(50, p), seq::min_matching(50, p));
        assert_eq!(min_matching(50, p), Some(11));
        assert!(all_range(50, |i| i < 50));
        assert!(!all_range(50, |i| i < 49));
        assert_eq!(min_matching(10, |_| false), None);
    }
}
