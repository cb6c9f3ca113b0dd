//! Index-range reductions, parallel under the `parallel` feature.
//!
//! Every reduction here is a sum of `u64` (or of `u64` vectors), so the result
//! does not depend on how the range is split.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `Σ_{i < n} f(i)`.
pub(crate) fn sum<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).sum()
    }
}

/// Component-wise `Σ_{i < n}` of the length-`width` vectors written by `f`.
pub(crate) fn sum_vec<F>(n: usize, width: usize, f: F) -> Vec<u64>
where
    F: Fn(usize, &mut [u64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .fold(
                || vec![0u64; width],
                |mut acc, i| {
                    f(i, &mut acc);
                    acc
                },
            )
            .reduce(
                || vec![0u64; width],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = vec![0u64; width];
        for i in 0..n {
            f(i, &mut acc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions_match_sequential() {
        assert_eq!(sum(1000, |i| i as u64), 499_500);
        let v = sum_vec(100, 3, |i, acc| acc[i % 3] += i as u64);
        assert_eq!(v.iter().sum::<u64>(), 4950);
        assert_eq!(v[0], (0..100).filter(|i| i % 3 == 0).sum::<u64>());
    }
}
