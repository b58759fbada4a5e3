//! Deterministic strategies as composable evaluators.
//!
//! A [`Strategy`] pairs a game with an [`Evaluator`] that maps a full
//! placement (and, for hint games, a window start) to every vertex's guess
//! set. Evaluators receive the whole placement for speed; the visibility
//! contract is enforced by [`mask_check`] rather than by the type system.

mod codec;
mod lookup;
mod provenance;

pub use codec::{pair_decode, pair_encode, ColorCodec};
pub use lookup::LookupStrategy;
pub use provenance::{Param, Provenance};

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{precondition, Error, Result};
use crate::game::{validate_game, Color, HatGame, HatPlacement, Vertex};

/// Sorted set of distinct colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GuessSet(SmallVec<[Color; 8]>);

impl GuessSet {
    pub fn new() -> Self {
        GuessSet(SmallVec::new())
    }

    pub fn from_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        let mut s = GuessSet(colors.into_iter().collect());
        s.normalize();
        s
    }

    /// Appends without re-sorting; call [`GuessSet::normalize`] afterwards
    /// unless colors are pushed in increasing order.
    #[inline]
    pub fn push(&mut self, c: Color) {
        self.0.push(c);
    }

    #[inline]
    pub fn clear(&mut self) {
        self.0.clear();
    }

    pub fn normalize(&mut self) {
        if !self.is_normalized() {
            self.0.sort_unstable();
            self.0.dedup();
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    #[inline]
    pub fn contains(&self, c: Color) -> bool {
        if self.0.len() <= 16 {
            self.0.contains(&c)
        } else {
            self.0.binary_search(&c).is_ok()
        }
    }

    /// Position of `c` in ascending order.
    pub fn rank(&self, c: Color) -> Option<usize> {
        self.0.binary_search(&c).ok()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.0.iter().copied()
    }

    pub fn assign(&mut self, other: &GuessSet) {
        self.0.clear();
        self.0.extend_from_slice(&other.0);
    }

    /// Fills up to `target` colors with the smallest colors below `hatness`
    /// not already present.
    pub fn pad_to(&mut self, target: usize, hatness: Color) {
        let mut c = 0;
        while self.0.len() < target && c < hatness {
            if !self.0.contains(&c) {
                self.0.push(c);
            }
            c += 1;
        }
        self.0.sort_unstable();
    }
}

/// Reusable scratch buffers for nested evaluators.
#[derive(Debug, Default)]
pub struct Arena {
    colors: Vec<Vec<Color>>,
    sets: Vec<Vec<GuessSet>>,
}

impl Arena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn take_colors(&mut self, len: usize) -> Vec<Color> {
        let mut v = self.colors.pop().unwrap_or_default();
        v.clear();
        v.resize(len, 0);
        v
    }

    pub fn give_colors(&mut self, v: Vec<Color>) {
        self.colors.push(v);
    }

    pub fn take_sets(&mut self, len: usize) -> Vec<GuessSet> {
        let mut v = self.sets.pop().unwrap_or_default();
        v.truncate(len);
        for s in v.iter_mut() {
            s.clear();
        }
        v.resize_with(len, GuessSet::new);
        v
    }

    pub fn give_sets(&mut self, v: Vec<GuessSet>) {
        self.sets.push(v);
    }
}

/// Computes every vertex's guesses for one placement.
///
/// Implementations must overwrite every slot of `out` with a normalized set,
/// read only the colors of a vertex's out-neighbors when computing its
/// guesses, and use `hint` only for the hint vertex.
pub trait Evaluator: Send + Sync + fmt::Debug {
    fn evaluate(&self, colors: &[Color], hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena);
}

#[derive(Clone)]
pub struct Strategy {
    game: Arc<HatGame>,
    eval: Arc<dyn Evaluator>,
    provenance: Arc<Provenance>,
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Strategy")
            .field("vertices", &self.game.vertex_count())
            .field("provenance", &self.provenance.kind)
            .finish()
    }
}

/// Guesses for one placement plus the vertices that guessed right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub guesses: Vec<GuessSet>,
    pub correct: Vec<Vertex>,
}

impl Strategy {
    pub fn new(game: HatGame, eval: impl Evaluator + 'static, provenance: Provenance) -> Result<Self> {
        Self::from_arc(game, Arc::new(eval), provenance)
    }

    pub(crate) fn from_arc(game: HatGame, eval: Arc<dyn Evaluator>, provenance: Provenance) -> Result<Self> {
        let violations = validate_game(&game);
        if !violations.is_empty() {
            return Err(Error::InvalidGame(violations));
        }
        Ok(Strategy { game: Arc::new(game), eval, provenance: Arc::new(provenance) })
    }

    pub fn game(&self) -> &HatGame {
        &self.game
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Same evaluator, new provenance root.
    pub fn with_provenance(&self, provenance: Provenance) -> Self {
        Strategy { game: self.game.clone(), eval: self.eval.clone(), provenance: Arc::new(provenance) }
    }

    /// Raw evaluation without checks; `out` must have one slot per vertex.
    #[inline]
    pub fn evaluate_into(&self, colors: &[Color], hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena) {
        self.eval.evaluate(colors, hint, out, arena);
    }

    /// Checks guess budgets, color ranges and ordering of an evaluation.
    pub fn check_guesses(&self, out: &[GuessSet]) -> Result<()> {
        for (v, set) in out.iter().enumerate() {
            let (h, g) = (self.game.hatness[v], self.game.guesses[v]);
            if set.len() > g as usize {
                return Err(Error::StrategyBug {
                    vertex: v,
                    reason: format!("{} guesses exceed budget {g}", set.len()),
                });
            }
            if !set.is_normalized() {
                return Err(Error::StrategyBug { vertex: v, reason: "guess set not strictly increasing".into() });
            }
            if let Some(&c) = set.as_slice().last() {
                if c >= h {
                    return Err(Error::StrategyBug { vertex: v, reason: format!("guess {c} exceeds hatness {h}") });
                }
            }
        }
        Ok(())
    }

    /// Whether some vertex guesses its own color.
    #[inline]
    pub fn any_correct(colors: &[Color], out: &[GuessSet]) -> bool {
        out.iter().zip(colors).any(|(s, &c)| s.contains(c))
    }

    /// Evaluates every vertex on a validated placement.
    pub fn evaluate_all(&self, placement: &HatPlacement, hint: Option<Color>) -> Result<Evaluation> {
        placement.validate(&self.game)?;
        let hint = self.resolve_hint(hint)?;
        let mut out = alloc::vec![GuessSet::new(); self.game.vertex_count()];
        let mut arena = Arena::new();
        self.eval.evaluate(&placement.0, hint, &mut out, &mut arena);
        self.check_guesses(&out)?;
        let correct = out
            .iter()
            .zip(&placement.0)
            .enumerate()
            .filter(|(_, (s, &c))| s.contains(c))
            .map(|(v, _)| v)
            .collect();
        Ok(Evaluation { guesses: out, correct })
    }

    pub(crate) fn resolve_hint(&self, hint: Option<Color>) -> Result<Option<Color>> {
        match (self.game.hint, hint) {
            (Some(h), Some(x)) => {
                let hb = self.game.hatness[h.vertex];
                if x >= hb {
                    return Err(Error::ColorOutOfRange { color: x as u64, bound: hb as u64 });
                }
                Ok(Some(x))
            }
            (Some(_), None) => Err(precondition("hint game evaluated without a window start")),
            (None, Some(_)) => Err(precondition("window start given for a game without hint")),
            (None, None) => Ok(None),
        }
    }
}

/// First visibility violation found by [`mask_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskViolation {
    pub placement: Vec<Color>,
    pub hint_start: Option<Color>,
    pub mutated_vertex: Vertex,
    pub new_color: Color,
    pub affected_vertex: Vertex,
    pub before: GuessSet,
    pub after: GuessSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskReport {
    pub trials: u64,
    pub seed: u64,
    pub violation: Option<MaskViolation>,
}

impl MaskReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Mutates one vertex's color per trial and checks that every vertex not
/// seeing it keeps its guesses. Mutated vertices cycle round-robin so every
/// vertex is exercised; placements and new colors come from `seed`.
pub fn mask_check(strategy: &Strategy, trials: u64, seed: u64) -> Result<MaskReport> {
    let game = strategy.game();
    let n = game.vertex_count();
    let mutable: Vec<Vertex> = (0..n).filter(|&v| game.hatness[v] >= 2).collect();
    let mut report = MaskReport { trials: 0, seed, violation: None };
    if mutable.is_empty() {
        return Ok(report);
    }
    let adj = game.graph.adjacency();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arena = Arena::new();
    let mut colors = alloc::vec![0; n];
    let mut before = alloc::vec![GuessSet::new(); n];
    let mut after = alloc::vec![GuessSet::new(); n];
    for t in 0..trials {
        for (c, &h) in colors.iter_mut().zip(&game.hatness) {
            *c = rng.random_range(0..h);
        }
        let hint = game.hint.map(|h| rng.random_range(0..game.hatness[h.vertex]));
        let m = mutable[(t as usize) % mutable.len()];
        let old = colors[m];
        let mut new = rng.random_range(0..game.hatness[m] - 1);
        if new >= old {
            new += 1;
        }
        strategy.evaluate_into(&colors, hint, &mut before, &mut arena);
        strategy.check_guesses(&before)?;
        let snapshot = colors.clone();
        colors[m] = new;
        strategy.evaluate_into(&colors, hint, &mut after, &mut arena);
        strategy.check_guesses(&after)?;
        report.trials += 1;
        for v in 0..n {
            if adj[v].binary_search(&m).is_ok() {
                continue;
            }
            if before[v] != after[v] {
                report.violation = Some(MaskViolation {
                    placement: snapshot,
                    hint_start: hint,
                    mutated_vertex: m,
                    new_color: new,
                    affected_vertex: v,
                    before: before[v].clone(),
                    after: after[v].clone(),
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}
