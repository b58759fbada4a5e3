//! Deciding whether a strategy wins.
//!
//! Placements are enumerated as a mixed-radix counter with vertex 0 most
//! significant, so the first disproving placement found is the
//! lexicographically smallest one. The `hatlab` crate splits the same index
//! space into contiguous ranges for parallel runs.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Color, PlacementSpace};
use crate::strategy::{Arena, GuessSet, Strategy};

/// Default cap on exhaustively enumerated placements.
pub const DEFAULT_PLACEMENT_BUDGET: u128 = 20_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    WinningVerified,
    Disproved,
    SampledClean,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Vec<Color>>,
    pub hint_start: Option<Color>,
    pub placements_checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(outcome: Outcome, placements_checked: u64) -> Self {
        Verdict {
            outcome,
            witness: None,
            hint_start: None,
            placements_checked,
            seed: None,
            wall_time_secs: None,
            note: None,
        }
    }

    /// Re-evaluates the witness; true when no vertex guesses correctly.
    pub fn witness_disproves(&self, strategy: &Strategy) -> Result<bool> {
        let Some(w) = &self.witness else { return Ok(false) };
        let placement = crate::game::HatPlacement(w.clone());
        let eval = strategy.evaluate_all(&placement, self.hint_start)?;
        if let (Some(hint), Some(x)) = (strategy.game().hint, self.hint_start) {
            let hb = strategy.game().hatness[hint.vertex];
            if !hint.window_contains(hb, x, w[hint.vertex]) {
                return Ok(false);
            }
        }
        Ok(eval.correct.is_empty())
    }
}

/// Result of scanning one contiguous range of placement indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeScan {
    pub first_failure: Option<u128>,
    pub checked: u64,
}

/// Checks placements `start..end` in order, stopping at the first one where
/// nobody guesses correctly.
pub fn scan_range(strategy: &Strategy, start: u128, end: u128, arena: &mut Arena) -> Result<RangeScan> {
    let game = strategy.game();
    if game.hint.is_some() {
        return Err(Error::Unsupported("hint games are verified with verify_hint_game".into()));
    }
    let space = PlacementSpace::of(game);
    let n = game.vertex_count();
    let mut colors = alloc::vec![0; n];
    let mut out = alloc::vec![GuessSet::new(); n];
    let mut scan = RangeScan { first_failure: None, checked: 0 };
    if start >= end {
        return Ok(scan);
    }
    space.decode(start, &mut colors);
    let mut index = start;
    loop {
        strategy.evaluate_into(&colors, None, &mut out, arena);
        strategy.check_guesses(&out)?;
        scan.checked += 1;
        if !Strategy::any_correct(&colors, &out) {
            scan.first_failure = Some(index);
            return Ok(scan);
        }
        index += 1;
        if index >= end || !space.advance(&mut colors) {
            return Ok(scan);
        }
    }
}

/// Number of placements of a hint-free game, refusing beyond `budget`.
pub fn placement_count_within(strategy: &Strategy, budget: u128) -> Result<u128> {
    match strategy.game().placement_count() {
        Some(n) if n <= budget => Ok(n),
        required => Err(Error::BudgetExceeded { required, budget }),
    }
}

/// Builds the verdict for a finished exhaustive scan.
pub fn exhaustive_verdict(strategy: &Strategy, first_failure: Option<u128>, checked: u64) -> Verdict {
    match first_failure {
        None => Verdict::new(Outcome::WinningVerified, checked),
        Some(idx) => {
            let mut v = Verdict::new(Outcome::Disproved, checked);
            let mut w = alloc::vec![0; strategy.game().vertex_count()];
            PlacementSpace::of(strategy.game()).decode(idx, &mut w);
            v.witness = Some(w);
            v
        }
    }
}

/// Single-threaded exhaustive verification.
pub fn verify_exhaustive(strategy: &Strategy, budget: u128) -> Result<Verdict> {
    let total = placement_count_within(strategy, budget)?;
    let scan = scan_range(strategy, 0, total, &mut Arena::new())?;
    Ok(exhaustive_verdict(strategy, scan.first_failure, scan.checked))
}

/// Exhaustive verification of a hint game over every pair of placement and
/// window start whose window contains the hint vertex's color.
///
/// Vertices other than the hint vertex must not react to the window start;
/// a dependence is reported as a strategy bug.
pub fn verify_hint_game(strategy: &Strategy, budget: u128) -> Result<Verdict> {
    let game = strategy.game();
    let Some(hint) = game.hint else {
        return Err(Error::Unsupported("verify_hint_game needs a hint game".into()));
    };
    let b = hint.vertex;
    let hb = game.hatness[b];
    let w = hint.width;
    let required = game.placement_count().and_then(|p| p.checked_mul(w as u128));
    match required {
        Some(r) if r <= budget => {}
        _ => return Err(Error::BudgetExceeded { required, budget }),
    }
    let space = PlacementSpace::of(game);
    let n = game.vertex_count();
    let mut colors = alloc::vec![0; n];
    let mut first = alloc::vec![GuessSet::new(); n];
    let mut out = alloc::vec![GuessSet::new(); n];
    let mut arena = Arena::new();
    let mut starts: Vec<Color> = Vec::with_capacity(w as usize);
    let mut checked = 0u64;
    loop {
        starts.clear();
        starts.extend((0..w).map(|d| (colors[b] + hb - d) % hb));
        starts.sort_unstable();
        for (k, &x) in starts.iter().enumerate() {
            let target = if k == 0 { &mut first } else { &mut out };
            strategy.evaluate_into(&colors, Some(x), target, &mut arena);
            strategy.check_guesses(target)?;
            checked += 1;
            if k > 0 {
                if let Some(v) = (0..n).find(|&v| v != b && first[v] != out[v]) {
                    return Err(Error::StrategyBug { vertex: v, reason: "guesses depend on another vertex's hint".into() });
                }
            }
            let current = if k == 0 { &first } else { &out };
            if !Strategy::any_correct(&colors, current) {
                let mut v = Verdict::new(Outcome::Disproved, checked);
                v.witness = Some(colors.clone());
                v.hint_start = Some(x);
                return Ok(v);
            }
        }
        if !space.advance(&mut colors) {
            break;
        }
    }
    Ok(Verdict::new(Outcome::WinningVerified, checked))
}

/// Counter-based placement sampler: sample `i` uses ChaCha stream `i` of
/// the seeded generator, so results do not depend on how samples are split
/// across workers.
#[derive(Debug, Clone)]
pub struct Sampler {
    base: ChaCha8Rng,
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { base: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Draws sample `index` into `out`; returns the window start for hint
    /// games (uniform among windows containing the hint vertex's color).
    pub fn draw(&self, strategy: &Strategy, index: u64, out: &mut [Color]) -> Option<Color> {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        let game = strategy.game();
        for (c, &h) in out.iter_mut().zip(&game.hatness) {
            *c = rng.random_range(0..h);
        }
        game.hint.map(|hint| {
            let hb = game.hatness[hint.vertex];
            let d = rng.random_range(0..hint.width);
            (out[hint.vertex] + hb - d) % hb
        })
    }
}

/// Checks samples `start..end`, returning the first failing index.
pub fn scan_samples(
    strategy: &Strategy,
    sampler: &Sampler,
    start: u64,
    end: u64,
    arena: &mut Arena,
) -> Result<Option<u64>> {
    let n = strategy.game().vertex_count();
    let mut colors = alloc::vec![0; n];
    let mut out = alloc::vec![GuessSet::new(); n];
    for i in start..end {
        let hint = sampler.draw(strategy, i, &mut colors);
        strategy.evaluate_into(&colors, hint, &mut out, arena);
        strategy.check_guesses(&out)?;
        if !Strategy::any_correct(&colors, &out) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Builds the verdict for a finished sampling run.
pub fn sampled_verdict(strategy: &Strategy, sampler: &Sampler, failure: Option<u64>, samples: u64) -> Verdict {
    match failure {
        None => {
            let mut v = Verdict::new(Outcome::SampledClean, samples);
            v.seed = Some(sampler.seed());
            v
        }
        Some(i) => {
            let mut w = alloc::vec![0; strategy.game().vertex_count()];
            let hint = sampler.draw(strategy, i, &mut w);
            let mut v = Verdict::new(Outcome::Disproved, i + 1);
            v.witness = Some(w);
            v.hint_start = hint;
            v.seed = Some(sampler.seed());
            v
        }
    }
}

/// Single-threaded sampling; sound for refutation only.
pub fn verify_sampled(strategy: &Strategy, samples: u64, seed: u64) -> Result<Verdict> {
    let sampler = Sampler::new(seed);
    let failure = scan_samples(strategy, &sampler, 0, samples, &mut Arena::new())?;
    Ok(sampled_verdict(strategy, &sampler, failure, samples))
}
