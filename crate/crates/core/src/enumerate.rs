//! Iteration over block labels `x ∈ Z_N^k` with their subset-sum counts.
//!
//! Both exact enumeration and Monte Carlo sampling run through [`fold_labels`].
//! Work is cut into shards of [`SHARD_SIZE`] labels fixed by label index (or
//! sample index), shards run in parallel, and the per-shard accumulators are
//! merged in shard order. Results therefore depend only on the inputs and the
//! seed, never on the thread count.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{saturating_pow, Moments};
use crate::rng::SeedSplitter;
use crate::subset_sum::dp_step;

/// Labels (or samples) per shard.
pub const SHARD_SIZE: u64 = 1024;

/// Largest `N^k` that exact enumeration accepts.
pub const EXACT_LABEL_LIMIT: u128 = 1 << 26;

/// Where block labels come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelSource {
    /// Every `x ∈ Z_N^k` exactly once, in lexicographic order.
    Enumerate,
    /// `samples` independent uniform draws.
    Random { samples: u64, seed: u64 },
}

impl LabelSource {
    pub fn is_exact(&self) -> bool {
        matches!(self, LabelSource::Enumerate)
    }
}

/// Walks a contiguous range of labels in lexicographic order (`x_1` most
/// significant), keeping the prefix tables `T_j` so each step only redoes
/// the tables below the highest changed digit.
#[derive(Debug, Clone)]
pub struct ProfileWalker {
    n: usize,
    x: Vec<usize>,
    tables: Vec<Vec<u128>>,
    remaining: u128,
    fresh: bool,
}

impl ProfileWalker {
    /// Labels with flat index in `start..end`.
    pub fn new(n: usize, k: usize, start: u128, end: u128) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidArgument("N and k must be at least 1".into()));
        }
        let total = saturating_pow(n as u128, k);
        if start > end || end > total {
            return Err(Error::InvalidArgument(format!(
                "label range {start}..{end} outside 0..{total}"
            )));
        }
        let mut x = vec![0usize; k];
        let mut rest = start;
        for slot in x.iter_mut().rev() {
            *slot = (rest % n as u128) as usize;
            rest /= n as u128;
        }
        let mut tables = vec![vec![0u128; n]; k + 1];
        tables[0][0] = 1;
        let mut walker = Self {
            n,
            x,
            tables,
            remaining: end - start,
            fresh: true,
        };
        walker.rebuild_from(0);
        Ok(walker)
    }

    fn rebuild_from(&mut self, digit: usize) {
        for j in digit..self.x.len() {
            let (head, tail) = self.tables.split_at_mut(j + 1);
            dp_step(&head[j], &mut tail[0], self.x[j]);
        }
    }

    /// The next `(x, η^x)`, or `None` when the range is exhausted.
    pub fn next_profile(&mut self) -> Option<(&[usize], &[u128])> {
        if self.remaining == 0 {
            return None;
        }
        if !self.fresh {
            let mut digit = self.x.len() - 1;
            loop {
                self.x[digit] += 1;
                if self.x[digit] < self.n {
                    break;
                }
                self.x[digit] = 0;
                // The range check above keeps this from running off the front.
                digit -= 1;
            }
            self.rebuild_from(digit);
        }
        self.fresh = false;
        self.remaining -= 1;
        Some((&self.x, &self.tables[self.x.len()]))
    }
}

/// Number of labels a source visits.
pub fn source_len(n: usize, k: usize, source: LabelSource) -> Result<u128> {
    match source {
        LabelSource::Enumerate => {
            let total = saturating_pow(n as u128, k);
            if total > EXACT_LABEL_LIMIT {
                return Err(Error::EnumerationGuard {
                    what: "block labels",
                    size: total,
                    limit: EXACT_LABEL_LIMIT,
                });
            }
            Ok(total)
        }
        LabelSource::Random { samples, .. } => Ok(samples as u128),
    }
}

/// Folds `visit` over the labels of `source`.
///
/// `init` creates one accumulator per shard; `merge` combines them in shard
/// order into the first.
pub fn fold_labels<A, I, F, M>(
    n: usize,
    k: usize,
    source: LabelSource,
    init: I,
    visit: F,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[usize], &[u128]) + Sync,
    M: Fn(&mut A, A),
{
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("N and k must be at least 1".into()));
    }
    let total = source_len(n, k, source)?;
    let shards = total.div_ceil(SHARD_SIZE as u128) as u64;
    let parts: Vec<Result<A>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let start = s as u128 * SHARD_SIZE as u128;
            let end = (start + SHARD_SIZE as u128).min(total);
            let mut acc = init();
            match source {
                LabelSource::Enumerate => {
                    let mut walker = ProfileWalker::new(n, k, start, end)?;
                    while let Some((x, eta)) = walker.next_profile() {
                        visit(&mut acc, x, eta);
                    }
                }
                LabelSource::Random { seed, .. } => {
                    let mut rng = SeedSplitter::new(seed).stream(s);
                    let mut x = vec![0usize; k];
                    let mut cur = vec![0u128; n];
                    let mut next = vec![0u128; n];
                    for _ in start..end {
                        x.iter_mut().for_each(|v| *v = rng.random_range(0..n));
                        cur.iter_mut().for_each(|v| *v = 0);
                        cur[0] = 1;
                        for &xj in &x {
                            dp_step(&cur, &mut next, xj);
                            std::mem::swap(&mut cur, &mut next);
                        }
                        visit(&mut acc, &x, &cur);
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut iter = parts.into_iter();
    let mut out = match iter.next() {
        Some(first) => first?,
        None => init(),
    };
    for part in iter {
        merge(&mut out, part?);
    }
    Ok(out)
}

/// Mean and standard error of `f(x, η^x)` over `source`.
pub fn label_moments<F>(n: usize, k: usize, source: LabelSource, f: F) -> Result<Moments>
where
    F: Fn(&[usize], &[u128]) -> f64 + Sync,
{
    fold_labels(
        n,
        k,
        source,
        Moments::default,
        |acc, x, eta| acc.push(f(x, eta)),
        |acc, other| acc.merge(&other),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::BlockLabel;
    use crate::subset_sum::count_eta;

    #[test]
    fn walker_matches_direct_counts() {
        for (n, k) in [(1, 3), (2, 4), (3, 3), (5, 2), (4, 5)] {
            let total = (n as u128).pow(k as u32);
            let mut walker = ProfileWalker::new(n, k, 0, total).unwrap();
            let mut idx = 0u128;
            while let Some((x, eta)) = walker.next_profile() {
                let label = BlockLabel::from_index(n, k, idx).unwrap();
                assert_eq!(x, label.values());
                assert_eq!(eta, count_eta(&label).eta.as_slice());
                idx += 1;
            }
            assert_eq!(idx, total);
        }
    }

    #[test]
    fn walker_resumes_mid_range() {
        let mut walker = ProfileWalker::new(3, 4, 40, 45).unwrap();
        let mut seen = Vec::new();
        while let Some((x, _)) = walker.next_profile() {
            seen.push(x.to_vec());
        }
        let want: Vec<Vec<usize>> = (40..45)
            .map(|i| BlockLabel::from_index(3, 4, i).unwrap().values().to_vec())
            .collect();
        assert_eq!(seen, want);
        assert!(ProfileWalker::new(3, 4, 0, 82).is_err());
    }

    #[test]
    fn fold_is_independent_of_thread_count() {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                label_moments(7, 6, LabelSource::Random { samples: 5000, seed: 3 }, |_, eta| {
                    eta.iter().map(|&e| (e as f64).sqrt()).sum::<f64>()
                })
                .unwrap()
            })
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.mean().to_bits(), b.mean().to_bits());
        assert_eq!(a.std_error().to_bits(), b.std_error().to_bits());
        assert_eq!(a.count, 5000);
    }

    #[test]
    fn enumeration_counts_every_label_once() {
        let total = fold_labels(
            4,
            6,
            LabelSource::Enumerate,
            || (0u128, 0u128),
            |acc, _, eta| {
                acc.0 += 1;
                acc.1 += eta[0];
            },
            |acc, o| {
                acc.0 += o.0;
                acc.1 += o.1;
            },
        )
        .unwrap();
        assert_eq!(total.0, 4096);
        // Σ_x η^x_0 = N^{k-1}(2^k - 1) + N^k.
        assert_eq!(total.1, 4u128.pow(5) * 63 + 4096);
        assert!(source_len(64, 5, LabelSource::Enumerate).is_err());
    }
}
