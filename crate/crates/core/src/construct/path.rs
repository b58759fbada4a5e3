use super::{clique_strategy, forget_hint, hint_extend, hint_window, permute, product_at_vertex};
use crate::error::{precondition, Result};
use crate::strategy::{Provenance, Strategy};

/// Hatness of `v_i` (1-based) on the hinted path `P_s`.
fn chain_hatness(s: u32, i: u32) -> u32 {
    if i < s {
        4 * s - 2
    } else {
        2 * s - 1
    }
}

/// The hinted game on `v_1 .. v_k` (`1 <= k <= s`) with `s` guesses
/// everywhere and the hint of width `s + k - 1` at `v_k`, vertex `v_i` at
/// index `i - 1`.
pub fn build_path_with_hint(s: u32, k: u32) -> Result<Strategy> {
    if s == 0 || k == 0 || k > s {
        return Err(precondition("hinted path needs 1 <= k <= s"));
    }
    let mut strategy = hint_window(chain_hatness(s, 1), s, s)?;
    for i in 2..=k {
        strategy = hint_extend(&strategy, chain_hatness(s, i), s, s + i - 1)?;
    }
    Ok(strategy)
}

/// Winning strategy on `P_{2s}` with `4s - 2` colors and `s` guesses at
/// every vertex, vertices in path order.
pub fn build_path(s: u32) -> Result<Strategy> {
    if s == 0 {
        return Err(precondition("build_path needs s >= 1"));
    }
    let half = forget_hint(&build_path_with_hint(s, s)?)?;
    let end = (s - 1) as usize;
    let edge = clique_strategy(&[2, 2], &[1, 1])?;
    // half (A = end) x edge: vertices 0..s then B at s
    let left = product_at_vertex(&half, end, &edge, 0)?;
    // second half glued at B, its vertices appended in index order
    let both = product_at_vertex(&left, s as usize, &half, end)?;
    let n = 2 * s as usize;
    // indices s+1 .. 2s-1 hold v_1 .. v_{s-1} of the second copy
    let mut order: alloc::vec::Vec<usize> = (0..=s as usize).collect();
    order.extend((s as usize + 1..n).rev());
    let path = permute(&both, &order)?;
    let prov = Provenance::new("path").param("s", s).child(both.provenance());
    Ok(path.with_provenance(prov))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::VisibilityGraph;
    use crate::strategy::mask_check;
    use crate::verify::{verify_exhaustive, verify_hint_game, Outcome};

    #[test]
    fn s1_is_edge() {
        let p = build_path(1).unwrap();
        assert_eq!(p.game().graph, VisibilityGraph::path(2));
        assert_eq!(p.game().hatness, [2, 2]);
        assert_eq!(p.game().guesses, [1, 1]);
        let v = verify_exhaustive(&p, u128::MAX).unwrap();
        assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 4));
    }

    #[test]
    fn s2_is_p4_with_six_colors() {
        let p = build_path(2).unwrap();
        assert_eq!(p.game().graph, VisibilityGraph::path(4));
        assert_eq!(p.game().hatness, [6; 4]);
        assert_eq!(p.game().guesses, [2; 4]);
        let v = verify_exhaustive(&p, u128::MAX).unwrap();
        assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 1296));
        assert!(mask_check(&p, 1000, 5).unwrap().passed());
    }

    #[test]
    fn s3_shape() {
        let p = build_path(3).unwrap();
        assert_eq!(p.game().graph, VisibilityGraph::path(6));
        assert_eq!(p.game().hatness, [10; 6]);
        assert_eq!(p.game().guesses, [3; 6]);
        assert!(mask_check(&p, 1000, 6).unwrap().passed());
        let v = verify_exhaustive(&p, u128::MAX).unwrap();
        assert_eq!(v.outcome, Outcome::WinningVerified);
    }

    #[test]
    fn hinted_intermediates_win() {
        for s in 1..=3 {
            for k in 1..=s {
                let h = build_path_with_hint(s, k).unwrap();
                assert_eq!(verify_hint_game(&h, u128::MAX).unwrap().outcome, Outcome::WinningVerified, "s={s} k={k}");
            }
        }
        assert!(build_path_with_hint(2, 3).is_err());
    }
}
