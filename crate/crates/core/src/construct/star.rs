use alloc::format;
use alloc::vec::Vec;

use crate::error::{precondition, Error, Result};
use crate::game::{Color, HatGame, VisibilityGraph};
use crate::phf::{verify_phf, PhfArray, PhfCheck};
use crate::strategy::{Arena, Evaluator, GuessSet, Provenance, Strategy};

/// Largest star the builders will materialize.
pub const MAX_STAR_LEAVES: usize = 1 << 20;

/// Center 0 with `H` colors and `s` guesses; leaf `i + 1` guesses
/// `tables[i][color of center]` out of `s + 1` colors.
#[derive(Debug)]
struct StarEval {
    tables: Vec<Vec<Color>>,
    center_h: u32,
    s: u32,
}

impl Evaluator for StarEval {
    fn evaluate(&self, colors: &[Color], _hint: Option<Color>, out: &mut [GuessSet], _arena: &mut Arena) {
        let (center, leaves) = out.split_first_mut().expect("star has a center");
        center.clear();
        // bad colors: no leaf would be right if the center wore them
        for c in 0..self.center_h {
            if self.tables.iter().zip(&colors[1..]).all(|(t, &x)| t[c as usize] != x) {
                center.push(c);
            }
        }
        center.pad_to(self.s as usize, self.center_h);
        for (slot, table) in leaves.iter_mut().zip(&self.tables) {
            slot.clear();
            slot.push(table[colors[0] as usize]);
        }
    }
}

fn star_game(leaves: usize, h: u32, s: u32) -> Result<HatGame> {
    let mut hatness = alloc::vec![s + 1; leaves + 1];
    let mut guesses = alloc::vec![1; leaves + 1];
    hatness[0] = h;
    guesses[0] = s;
    HatGame::new(VisibilityGraph::star(leaves), hatness, guesses).checked()
}

/// Heap of each stone for scrap-heap `index`: the index is read as
/// `(c_0, ..., c_s)` in base `H`, `c_0` most significant, and stone `c_j`
/// goes to heap `j` (smallest `j` on repeats); other stones go to heap 0.
pub fn scrap_heap(index: usize, s: u32, h: u32) -> Vec<Color> {
    let mut stones = alloc::vec![0; s as usize + 1];
    let mut rest = index;
    for slot in stones.iter_mut().rev() {
        *slot = (rest % h as usize) as u32;
        rest /= h as usize;
    }
    let mut heap = alloc::vec![0; h as usize];
    for (j, &c) in stones.iter().enumerate().rev() {
        heap[c as usize] = j as Color;
    }
    heap
}

/// Star `K_{1,n}` with `n = H^(s+1)` leaves, one per tuple of `s + 1`
/// stones.
pub fn star_scrapheap(s: u32, h: u32) -> Result<Strategy> {
    if s == 0 || h == 0 {
        return Err(precondition("scrap-heap star needs s >= 1 and H >= 1"));
    }
    let n = (h as usize)
        .checked_pow(s + 1)
        .filter(|&n| n <= MAX_STAR_LEAVES)
        .ok_or_else(|| Error::Refused(format!("{h}^{} leaves exceed the star budget", s + 1)))?;
    let tables = (0..n).map(|i| scrap_heap(i, s, h)).collect();
    let game = star_game(n, h, s)?;
    let prov = Provenance::new("star_scrapheap").param("s", s).param("H", h);
    Strategy::new(game, StarEval { tables, center_h: h, s }, prov)
}

/// Star with one leaf per row of a `PHF(N; H, s+1, s+1)`.
pub fn star_from_phf(phf: &PhfArray, s: u32) -> Result<Strategy> {
    if phf.v != s + 1 || phf.t != s + 1 {
        return Err(precondition(format!("star needs v = t = s + 1 = {}, got v = {}, t = {}", s + 1, phf.v, phf.t)));
    }
    if let PhfCheck::Invalid { columns } = verify_phf(phf)? {
        return Err(Error::Refused(format!("not a perfect hash family: columns {columns:?} are never separated")));
    }
    let h = phf.column_count() as u32;
    let tables: Vec<Vec<Color>> = phf.rows().to_vec();
    let game = star_game(tables.len(), h, s)?;
    let prov = Provenance::new("star_phf")
        .param("s", s)
        .param("H", h)
        .param("rows", tables.len());
    Strategy::new(game, StarEval { tables, center_h: h, s }, prov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phf::binary_separating;
    use crate::strategy::mask_check;
    use crate::verify::{verify_exhaustive, Outcome};

    #[test]
    fn phf_star_s1() {
        let star = star_from_phf(&binary_separating(6), 1).unwrap();
        assert_eq!(star.game().vertex_count(), 4);
        let v = verify_exhaustive(&star, u128::MAX).unwrap();
        assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 48));
        assert!(mask_check(&star, 1000, 7).unwrap().passed());
    }

    #[test]
    fn trivial_scrapheap() {
        let star = star_scrapheap(1, 1).unwrap();
        assert_eq!(star.game().vertex_count(), 2);
        assert_eq!(verify_exhaustive(&star, u128::MAX).unwrap().outcome, Outcome::WinningVerified);
    }

    #[test]
    fn scrapheap_s1_h3() {
        let star = star_scrapheap(1, 3).unwrap();
        assert_eq!(star.game().vertex_count(), 10);
        assert_eq!(verify_exhaustive(&star, u128::MAX).unwrap().outcome, Outcome::WinningVerified);
    }

    #[test]
    fn non_phf_refused() {
        let bad = PhfArray::new(alloc::vec![alloc::vec![0, 1, 0]], 3, 2, 2).unwrap();
        let err = star_from_phf(&bad, 1).unwrap_err();
        assert!(format!("{err}").contains("[0, 2]"));
    }

    #[test]
    fn heaps() {
        // s = 1, H = 4: index 6 = (1, 2): stone 1 in heap 0, stone 2 in heap 1
        assert_eq!(scrap_heap(6, 1, 4), [0, 0, 1, 0]);
        // repeated stone stays in the lower heap
        assert_eq!(scrap_heap(5, 1, 4), [0, 0, 0, 0]);
    }
}
