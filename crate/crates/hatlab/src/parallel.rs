//! Multi-threaded verification.
//!
//! Placement indices are cut into contiguous chunks scanned on a rayon pool.
//! Workers skip chunks past the earliest failure seen so far, and the
//! verdict is taken from the smallest failing index, so the witness is the
//! same one a single-threaded scan reports. Sampling splits sample indices
//! the same way; sample `i` depends only on the seed and `i`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use hatlab_core::error::{Error, Result};
use hatlab_core::verify::{
    exhaustive_verdict, placement_count_within, sampled_verdict, scan_range, scan_samples, verify_hint_game, Sampler,
};
use hatlab_core::{Arena, Strategy, Verdict};
use rayon::prelude::*;

/// Worker threads; `None` uses rayon's default (one per hardware thread).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Parallelism(pub Option<usize>);

impl Parallelism {
    pub fn threads(n: usize) -> Self {
        Parallelism(Some(n.max(1)))
    }

    fn pool(self) -> Result<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.0 {
            b = b.num_threads(n);
        }
        b.build().map_err(|e| Error::Unsupported(format!("thread pool: {e}")))
    }
}

const MIN_CHUNK: u128 = 1 << 14;

fn chunking(total: u128, threads: usize) -> (u128, u64) {
    let chunk = (total / (threads as u128 * 64)).max(MIN_CHUNK);
    let count = total.div_ceil(chunk);
    (chunk, u64::try_from(count).expect("chunk count fits u64"))
}

/// Exhaustive verification over the thread pool. Hint games run on the
/// calling thread.
pub fn verify_exhaustive_par(strategy: &Strategy, budget: u128, par: Parallelism) -> Result<Verdict> {
    let start = Instant::now();
    if strategy.game().hint.is_some() {
        let mut v = verify_hint_game(strategy, budget)?;
        v.wall_time_secs = Some(start.elapsed().as_secs_f64());
        return Ok(v);
    }
    let total = placement_count_within(strategy, budget)?;
    let pool = par.pool()?;
    let (chunk, chunks) = chunking(total, pool.current_num_threads());
    let earliest = AtomicU64::new(u64::MAX);
    let failures: Result<Vec<u128>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map_init(Arena::new, |arena, c| {
                if c > earliest.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                let lo = c as u128 * chunk;
                let hi = (lo + chunk).min(total);
                let scan = scan_range(strategy, lo, hi, arena)?;
                if scan.first_failure.is_some() {
                    earliest.fetch_min(c, Ordering::Relaxed);
                }
                Ok(scan.first_failure)
            })
            .filter_map(Result::transpose)
            .collect()
    });
    let first = failures?.into_iter().min();
    // Counts as a sequential scan would report them, independent of threads.
    let checked = match first {
        Some(i) => i + 1,
        None => total,
    };
    let mut v = exhaustive_verdict(strategy, first, u64::try_from(checked).unwrap_or(u64::MAX));
    v.wall_time_secs = Some(start.elapsed().as_secs_f64());
    Ok(v)
}

/// Seeded sampling over the thread pool; refutation only.
pub fn verify_sampled_par(strategy: &Strategy, samples: u64, seed: u64, par: Parallelism) -> Result<Verdict> {
    let start = Instant::now();
    let sampler = Sampler::new(seed);
    let pool = par.pool()?;
    let (chunk, chunks) = chunking(samples as u128, pool.current_num_threads());
    let chunk = chunk as u64;
    let earliest = AtomicU64::new(u64::MAX);
    let failures: Result<Vec<u64>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map_init(Arena::new, |arena, c| {
                if c > earliest.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                let lo = c * chunk;
                let hi = (lo + chunk).min(samples);
                let f = scan_samples(strategy, &sampler, lo, hi, arena)?;
                if f.is_some() {
                    earliest.fetch_min(c, Ordering::Relaxed);
                }
                Ok(f)
            })
            .filter_map(Result::transpose)
            .collect()
    });
    let first = failures?.into_iter().min();
    let mut v = sampled_verdict(strategy, &sampler, first, samples);
    v.wall_time_secs = Some(start.elapsed().as_secs_f64());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hatlab_core::{build_path, verify_exhaustive, verify_sampled, Outcome};

    #[test]
    fn matches_sequential() {
        let s = build_path(2).unwrap();
        for t in [1, 2, 8] {
            let v = verify_exhaustive_par(&s, u128::MAX, Parallelism::threads(t)).unwrap();
            assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 1296));
        }
        let a = verify_sampled(&s, 5000, 3).unwrap();
        let b = verify_sampled_par(&s, 5000, 3, Parallelism::threads(4)).unwrap();
        assert_eq!((a.outcome, a.placements_checked), (b.outcome, b.placements_checked));
        assert_eq!(verify_exhaustive(&s, u128::MAX).unwrap().outcome, Outcome::WinningVerified);
    }
}
