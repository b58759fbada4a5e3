use hatlab_core::cert::{alon_cert, path_losing, petal_losing};
use hatlab_core::construct::{build_l_table, build_path_with_hint, star_scrapheap};
use hatlab_core::strategy::mask_check;
use hatlab_core::{
    binary_separating, build_path, build_petal, check_certificate, guess_ratio_sum, verify_exhaustive,
    verify_hint_game, Fraction, HatGame, Outcome, StarBackend, VisibilityGraph,
};

#[test]
fn path_hat_guessing_lower_bounds() {
    for s in 1..=3u32 {
        let p = build_path(s).unwrap();
        let g = p.game();
        assert_eq!(g.vertex_count(), 2 * s as usize);
        assert_eq!(g.graph, VisibilityGraph::path(2 * s as usize));
        assert!(g.hatness.iter().all(|&h| h == 4 * s - 2));
        assert!(g.guesses.iter().all(|&x| x == s));
        assert!(mask_check(&p, 1000, u64::from(s)).unwrap().passed());
    }
    let v = verify_exhaustive(&build_path(2).unwrap(), u128::MAX).unwrap();
    assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 1296));
}

#[test]
fn hinted_chain_intermediates_win() {
    for k in 1..=2 {
        let s = build_path_with_hint(2, k).unwrap();
        assert_eq!(verify_hint_game(&s, u128::MAX).unwrap().outcome, Outcome::WinningVerified);
    }
}

#[test]
fn four_s_minus_one_colors_lose_on_paths() {
    for n in 1..=10 {
        let c = path_losing(1, n).unwrap();
        assert!(check_certificate(&c).valid);
    }
    // with the first vertex raised to 4s - 1 the certified game is <P_n, 3, 1>
    let c = path_losing(1, 3).unwrap();
    assert_eq!(c.game, HatGame::new(VisibilityGraph::path(3), vec![2, 3, 3], vec![1; 3]));
}

#[test]
fn figure_l_table() {
    let t = build_l_table(14, 14, 6, 5, 4).unwrap();
    assert!(t.max_empty_in_window() <= 4);
    // 6 * 5 = 30 >= (6 - 4) * 14 = 28 and 14 | 5 * 14
    assert!(build_l_table(14, 14, 6, 5, 3).is_err());
}

#[test]
fn stars_from_both_backends() {
    let s = star_scrapheap(1, 4).unwrap();
    assert_eq!(s.game().vertex_count(), 17);
    let v = verify_exhaustive(&s, u128::MAX).unwrap();
    assert_eq!((v.outcome, v.placements_checked), (Outcome::WinningVerified, 262_144));
    let p = hatlab_core::construct::star_from_phf(&binary_separating(6), 1).unwrap();
    assert_eq!(verify_exhaustive(&p, u128::MAX).unwrap().placements_checked, 48);
}

#[test]
fn petal_colors_and_bound() {
    let p = build_petal(1, &StarBackend::Phf(binary_separating(6))).unwrap();
    assert!(p.game().hatness.iter().all(|&h| h == 6));
    // one more color loses: 4s(s+1) - 1 = 7 with a strong stem
    let c = petal_losing(1, 12).unwrap();
    assert!(check_certificate(&c).valid);
    assert_eq!(c.game.hatness[1..], [7; 12]);
}

#[test]
fn alon_leaf_sums() {
    let a = guess_ratio_sum(&[2, 3], &[1, 1]).unwrap();
    let b = guess_ratio_sum(&[12, 13], &[6, 6]).unwrap();
    assert_eq!((a.num(), a.den()), (5, 6));
    assert_eq!((b.num(), b.den()), (25, 26));
    assert!(a < Fraction::ONE && b < Fraction::ONE);
    for edges in 1..=4 {
        assert!(check_certificate(&alon_cert(edges).unwrap()).valid);
    }
}
