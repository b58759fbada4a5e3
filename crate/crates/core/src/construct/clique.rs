use alloc::format;
use alloc::vec::Vec;

use crate::error::{precondition, Error, Result};
use crate::game::{Color, HatGame, VisibilityGraph};
use crate::ratio::{guess_ratio_sum, lcm_all, Fraction};
use crate::strategy::{Arena, Evaluator, GuessSet, Provenance, Strategy};

/// Interval covering on the circle `Z_L`, `L = lcm(h)`: vertex `v` owns the
/// arc `[start_v, start_v + g_v * step_v)` with `step_v = L / h_v`, arcs
/// packed from 0 in index order. The placement's position is
/// `sum colors[u] * step_u mod L`; `v` guesses every own color that would
/// put the position inside its arc. An arc of length `g * step` holds
/// exactly `g` of the `h` equally spaced candidates, so every set has
/// exactly `g_v` colors. Arcs running past `L` wrap around.
#[derive(Debug)]
struct CliqueEval {
    modulus: u64,
    step: Vec<u64>,
    start: Vec<u64>,
    hatness: Vec<u32>,
    guesses: Vec<u32>,
}

impl Evaluator for CliqueEval {
    fn evaluate(&self, colors: &[Color], _hint: Option<Color>, out: &mut [GuessSet], _arena: &mut Arena) {
        let l = self.modulus;
        let total = colors.iter().zip(&self.step).fold(0u64, |acc, (&c, &st)| (acc + c as u64 * st) % l);
        for (v, slot) in out.iter_mut().enumerate() {
            slot.clear();
            let (h, g) = (self.hatness[v], self.guesses[v]);
            if g >= h {
                (0..h).for_each(|c| slot.push(c));
                continue;
            }
            let others = (total + l - colors[v] as u64 * self.step[v] % l) % l;
            let offset = (others + l - self.start[v]) % l;
            // candidate c sits at offset + c*step; its slot index inside the
            // arc is (offset/step + c) mod h
            let q = (offset / self.step[v]) % h as u64;
            for k in 0..g as u64 {
                slot.push(((k + h as u64 - q) % h as u64) as Color);
            }
            slot.normalize();
        }
    }
}

/// Winning strategy on the complete graph whenever the guess ratios sum to
/// at least one.
pub fn clique_strategy(hatness: &[u32], guesses: &[u32]) -> Result<Strategy> {
    if hatness.len() != guesses.len() {
        return Err(precondition("hatness and guesses differ in length"));
    }
    let game = HatGame::new(VisibilityGraph::complete(hatness.len()), hatness.to_vec(), guesses.to_vec()).checked()?;
    let sum = guess_ratio_sum(&game.hatness, &game.guesses)?;
    if sum < Fraction::ONE {
        return Err(Error::Refused(format!("guess ratios sum to {sum} < 1; the clique game is losing")));
    }
    let modulus = lcm_all(&game.hatness).ok_or(Error::Overflow("lcm of hatnesses"))? as u64;
    let step: Vec<u64> = game.hatness.iter().map(|&h| modulus / h as u64).collect();
    let mut start = Vec::with_capacity(step.len());
    let mut at = 0u64;
    for (st, &g) in step.iter().zip(&game.guesses) {
        start.push(at % modulus);
        at += st * g as u64;
    }
    let prov = Provenance::new("clique").param("h", &game.hatness[..]).param("g", &game.guesses[..]);
    let eval = CliqueEval { modulus, step, start, hatness: game.hatness.clone(), guesses: game.guesses.clone() };
    Strategy::new(game, eval, prov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_exhaustive, Outcome};

    #[test]
    fn edge_half_half_wins() {
        let s = clique_strategy(&[2, 2], &[1, 1]).unwrap();
        let v = verify_exhaustive(&s, u128::MAX).unwrap();
        assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 4));
    }

    #[test]
    fn deficit_refused() {
        assert!(matches!(clique_strategy(&[2, 3], &[1, 1]), Err(Error::Refused(_))));
    }

    #[test]
    fn full_guess_single_vertex() {
        let s = clique_strategy(&[4], &[4]).unwrap();
        assert_eq!(verify_exhaustive(&s, u128::MAX).unwrap().outcome, Outcome::WinningVerified);
    }

    #[test]
    fn exact_guess_counts_and_wins() {
        let cases: [(&[u32], &[u32]); 5] =
            [(&[2, 3, 6], &[1, 1, 1]), (&[3, 3, 3], &[1, 1, 2]), (&[4, 6], &[3, 2]), (&[5, 5, 5, 5], &[2, 1, 1, 1]), (&[1, 2], &[1, 1])];
        for (h, g) in cases {
            let s = clique_strategy(h, g).unwrap();
            assert_eq!(verify_exhaustive(&s, u128::MAX).unwrap().outcome, Outcome::WinningVerified, "{h:?}");
            let space = crate::game::PlacementSpace::new(h.to_vec());
            let mut colors = alloc::vec![0; h.len()];
            let mut out = alloc::vec![GuessSet::new(); h.len()];
            loop {
                s.evaluate_into(&colors, None, &mut out, &mut Arena::new());
                for v in 0..h.len() {
                    assert_eq!(out[v].len() as u32, g[v].min(h[v]));
                }
                if !space.advance(&mut colors) {
                    break;
                }
            }
        }
    }
}
