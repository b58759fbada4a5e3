use alloc::format;
use alloc::vec::Vec;

use super::{build_path, clique_strategy, permute, product_at_vertex, star_from_phf, star_scrapheap, substitute};
use crate::error::{precondition, Error, Result};
use crate::phf::{binary_separating, PhfArray};
use crate::strategy::{Provenance, Strategy};

/// Which star the petal is built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarBackend {
    ScrapHeap,
    Phf(PhfArray),
}

impl StarBackend {
    /// The closed-form binary family for `s = 1`; larger `s` need an array.
    pub fn default_for(s: u32) -> Option<Self> {
        (s == 1).then(|| StarBackend::Phf(binary_separating(6)))
    }
}

/// Petal game with `4s(s+1) - 2` colors and `s` guesses everywhere: a path
/// `P_{2s(s+1)}` substituted into every leaf of a star, reduced by `s + 1`.
///
/// Vertex 0 is the stem; leaf copy `i` occupies the contiguous block
/// `1 + i*k .. 1 + (i+1)*k` in path order, `k = 2s(s+1)`.
pub fn build_petal(s: u32, star: &StarBackend) -> Result<Strategy> {
    if s == 0 {
        return Err(precondition("petal needs s >= 1"));
    }
    let h = 4 * s * (s + 1) - 2;
    let star = match star {
        StarBackend::ScrapHeap => star_scrapheap(s, h)?,
        StarBackend::Phf(phf) => {
            let phf = if phf.column_count() > h as usize { phf.truncate_columns(h as usize)? } else { phf.clone() };
            if phf.column_count() != h as usize {
                return Err(precondition(format!("petal needs a family with {h} columns, got {}", phf.column_count())));
            }
            star_from_phf(&phf, s)?
        }
    };
    let inner = build_path(s * (s + 1))?;
    let k = inner.game().vertex_count();
    let leaves = star.game().vertex_count() - 1;
    // Substituting at leaf z puts the path first and the rest of the host
    // after it, so the next untouched leaf is always at index k * done + 1.
    let mut acc = star.clone();
    for done in 0..leaves {
        let z = k * done + 1;
        acc = substitute(&inner, &acc, z, s + 1)?;
    }
    // Copies now sit in reverse order ahead of the stem.
    let n = acc.game().vertex_count();
    let stem = k * leaves;
    let mut order = Vec::with_capacity(n);
    order.push(stem);
    for copy in 0..leaves {
        let block = (leaves - 1 - copy) * k;
        order.extend(block..block + k);
    }
    let petal = permute(&acc, &order)?;
    let g = petal.game();
    if g.hatness.iter().any(|&x| x != h) || g.guesses.iter().any(|&x| x != s) {
        return Err(Error::StrategyBug { vertex: 0, reason: format!("petal is not uniform {s}/{h}") });
    }
    let prov = Provenance::new("petal")
        .param("s", s)
        .param("leaves", leaves)
        .param("path", k)
        .child(acc.provenance());
    Ok(petal.with_provenance(prov))
}

/// The planar game: `k >= 5` copies of a 2-guess petal substituted into
/// the 1/2 end of edge(1/2, 1/2), multiplied at the shared apex. The apex
/// is vertex `petal size` and has `2^k` colors; everything else has 22
/// colors and one guess.
pub fn build_planar22(k: u32, star: &StarBackend) -> Result<Strategy> {
    if k < 5 {
        return Err(Error::Refused(format!("k = {k} copies give an apex with {} < 22 colors", 1u64 << k)));
    }
    let petal = build_petal(2, star)?;
    let edge = clique_strategy(&[2, 2], &[1, 1])?;
    let piece = substitute(&petal, &edge, 0, 2)?;
    let apex = petal.game().vertex_count();
    let mut acc = piece.clone();
    for _ in 1..k {
        acc = product_at_vertex(&acc, apex, &piece, apex)?;
    }
    let prov = Provenance::new("planar22").param("k", k).child(acc.provenance());
    Ok(acc.with_provenance(prov))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::mask_check;
    use crate::verify::{verify_sampled, Outcome};

    #[test]
    fn petal_s1_shape() {
        let p = build_petal(1, &StarBackend::default_for(1).unwrap()).unwrap();
        let g = p.game();
        assert_eq!(g.vertex_count(), 13);
        assert!(g.hatness.iter().all(|&h| h == 6));
        assert!(g.guesses.iter().all(|&x| x == 1));
        for v in 1..13 {
            assert!(g.graph.has_arc(0, v) && g.graph.has_arc(v, 0));
        }
        for copy in 0..3 {
            let base = 1 + 4 * copy;
            for i in 0..3 {
                assert!(g.graph.has_arc(base + i, base + i + 1) && g.graph.has_arc(base + i + 1, base + i));
            }
        }
        assert_eq!(g.graph.arc_count(), 2 * 12 + 2 * 9);
        assert!(mask_check(&p, 1000, 8).unwrap().passed());
        assert_eq!(verify_sampled(&p, 20_000, 9).unwrap().outcome, Outcome::SampledClean);
    }

    #[test]
    fn planar_needs_five_copies() {
        assert!(matches!(build_planar22(4, &StarBackend::ScrapHeap), Err(Error::Refused(_))));
    }
}
