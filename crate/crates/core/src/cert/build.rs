use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{glue_games, LosingCertificate, Rule};
use crate::error::{precondition, Error, Result};
use crate::game::{HatGame, Vertex, VisibilityGraph};

/// Path on `n` vertices with `2s` colors at vertex 0, `4s - 1` elsewhere,
/// `s` guesses everywhere.
pub fn path_losing_game(s: u32, n: usize) -> HatGame {
    let mut hatness = alloc::vec![4 * s - 1; n];
    hatness[0] = 2 * s;
    HatGame::new(VisibilityGraph::path(n), hatness, alloc::vec![s; n])
}

/// Certificate for [`path_losing_game`]. One vertex and the edge are clique
/// deficits; longer paths step down one vertex at a time to the edge.
/// Raising vertex 0 to `4s - 1` colors afterwards keeps the game losing.
pub fn path_losing(s: u32, n: usize) -> Result<LosingCertificate> {
    if s == 0 || n == 0 {
        return Err(precondition("path certificate needs s >= 1 and n >= 1"));
    }
    let base = n.min(2);
    let mut cert = LosingCertificate::leaf(path_losing_game(s, base), Rule::CliqueDeficit);
    for m in base + 1..=n {
        cert = LosingCertificate::node(path_losing_game(s, m), Rule::PathStep, alloc::vec![cert]);
    }
    Ok(cert)
}

fn raise_hatness(cert: LosingCertificate, hatness: Vec<u32>) -> LosingCertificate {
    let mut game = cert.game.clone();
    game.hatness = hatness;
    LosingCertificate::node(game, Rule::HatnessIncrease, alloc::vec![cert])
}

/// Petal with a path of `n` vertices: stem 0 with `s + 1` colors, path
/// vertices `1..=n` with `4s(s+1) - 1` colors, `s` guesses everywhere.
pub fn petal_losing(s: u32, n: usize) -> Result<LosingCertificate> {
    if s == 0 || n == 0 {
        return Err(precondition("petal certificate needs s >= 1 and n >= 1"));
    }
    let big = s * (s + 1);
    let path = path_losing(big, n)?;
    let path = raise_hatness(path, alloc::vec![4 * big - 1; n]);
    let mut graph = VisibilityGraph::new(n + 1);
    for v in 1..=n {
        graph.add_edge(0, v);
        if v > 1 {
            graph.add_edge(v - 1, v);
        }
    }
    let mut hatness = alloc::vec![4 * big - 1; n + 1];
    hatness[0] = s + 1;
    let game = HatGame::new(graph, hatness, alloc::vec![s; n + 1]);
    Ok(LosingCertificate::node(game, Rule::RemoveStrongVertex { a: 0 }, alloc::vec![path]))
}

/// Which vertex of a new petal is glued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlueVertex {
    Stem,
    /// Path vertex, 0-based along the path.
    Path(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PetalGlue {
    pub path_len: usize,
    /// Vertex of the petunia built so far.
    pub at: Vertex,
    pub by: GlueVertex,
}

/// A petunia grown from a root petal. The root petal's stem is vertex 0 and
/// its path is `1..=root_path`; each glued petal appends its remaining
/// vertices, path order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoyalPetunia {
    pub root_path: usize,
    #[serde(default)]
    pub petals: Vec<PetalGlue>,
}

/// Certificate for a royal petunia: every vertex has `4s(s+1) - 1` colors
/// except the root stem with `s + 1`, all with `s` guesses.
pub fn royal_petunia(s: u32, petunia: &RoyalPetunia) -> Result<LosingCertificate> {
    let mut cert = petal_losing(s, petunia.root_path)?;
    for (i, p) in petunia.petals.iter().enumerate() {
        if p.by != GlueVertex::Stem {
            return Err(Error::Refused(format!("petal {i} is glued by a path vertex, not by its stem")));
        }
        let n = cert.game.vertex_count();
        if p.at >= n {
            return Err(Error::VertexOutOfRange { vertex: p.at, vertex_count: n });
        }
        let petal = petal_losing(s, p.path_len)?;
        let game = glue_games(&cert.game, p.at, &petal.game, 0);
        cert = LosingCertificate::node(game, Rule::GlueAtVertex { a1: p.at, a2: 0 }, alloc::vec![cert, petal]);
    }
    Ok(cert)
}

/// Two apexes `A = 0` and `B = 1`, adjacent to each other and to both ends
/// of `edges` disjoint edges `(2 + 2i, 3 + 2i)`. `None` gives the weighted
/// pattern (2 and 3 at the apexes, 13 and 12 on each edge), `Some(h)` a
/// uniform hatness.
pub fn alon_game(edges: usize, uniform: Option<u32>) -> HatGame {
    let n = 2 + 2 * edges;
    let mut graph = VisibilityGraph::new(n);
    graph.add_edge(0, 1);
    for i in 0..edges {
        let (x, y) = (2 + 2 * i, 3 + 2 * i);
        graph.add_edge(x, y);
        for apex in [0, 1] {
            graph.add_edge(apex, x);
            graph.add_edge(apex, y);
        }
    }
    let hatness = match uniform {
        Some(h) => alloc::vec![h; n],
        None => {
            let mut h = alloc::vec![2, 3];
            for _ in 0..edges {
                h.extend([13, 12]);
            }
            h
        }
    };
    HatGame::new(graph, hatness, alloc::vec![1; n])
}

/// Certificate that `alon_game(edges, Some(13))` loses, one guess each.
///
/// Without the arcs into the apexes the components are the apex edge
/// (1/2, 1/3) and each side edge with 6 guesses (6/13, 6/12). The arcs are
/// then put back one at a time, each dividing the tail's guesses.
pub fn alon_cert(edges: usize) -> Result<LosingCertificate> {
    if edges == 0 {
        return Err(precondition("at least one side edge"));
    }
    let target = alon_game(edges, None);
    let mut removed: Vec<(Vertex, Vertex)> = Vec::new();
    for x in 2..target.vertex_count() {
        removed.push((x, 0));
        removed.push((x, 1));
    }
    let mut split = target.clone();
    for &(u, v) in &removed {
        split.graph.remove_arc(u, v);
        split.guesses[u] *= target.hatness[v];
    }
    let mut parts = alloc::vec![alloc::vec![0, 1]];
    let mut children = alloc::vec![LosingCertificate::leaf(
        crate::game::induced_subgame(&split, &[0, 1])?.game,
        Rule::CliqueDeficit
    )];
    for i in 0..edges {
        let part = alloc::vec![2 + 2 * i, 3 + 2 * i];
        let sub = crate::game::induced_subgame(&split, &part)?.game;
        children.push(LosingCertificate::leaf(sub, Rule::CliqueDeficit));
        parts.push(part);
    }
    let mut cert = LosingCertificate::node(split, Rule::SccSplit { parts }, children);
    // Re-adding x -> B first divides 6 by 3, then x -> A divides 2 by 2.
    for &(u, v) in removed.iter().rev() {
        let mut game = cert.game.clone();
        game.graph.add_arc(u, v);
        game.guesses[u] /= game.hatness[v];
        cert = LosingCertificate::node(game, Rule::AddHalfEdge { u, v }, alloc::vec![cert]);
    }
    debug_assert_eq!(cert.game, target);
    Ok(raise_hatness(cert, alloc::vec![13; target.vertex_count()]))
}
