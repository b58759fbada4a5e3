//! Losing certificates: derivation trees concluding that no strategy wins.
//!
//! Every node stores the full game it certifies, so a certificate can be
//! checked without any context. Leaves are clique deficits or brute-force
//! runs; internal rules derive a losing game from losing children.

mod build;
mod check;

pub use build::{alon_cert, alon_game, path_losing, path_losing_game, petal_losing, royal_petunia, GlueVertex, PetalGlue, RoyalPetunia};
pub use check::{check_certificate, CertReport, CertViolation};

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::game::{HatGame, Vertex};

/// How a node's game follows from its children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Rule {
    /// Complete graph whose guess ratios sum to less than 1. No children.
    CliqueDeficit,
    /// Decided by the exhaustive solver within `node_budget`. No children.
    BruteForced { node_budget: u64 },
    /// Two losing games sharing one vertex: vertex `a1` of the first child
    /// and the strong vertex `a2` of the second. The second child's other
    /// vertices are appended in ascending order.
    GlueAtVertex { a1: Vertex, a2: Vertex },
    /// The child lacks the arc `u -> v`; adding it keeps the game losing
    /// once `u`'s guesses are divided by `h(v)`, rounding down.
    AddHalfEdge { u: Vertex, v: Vertex },
    /// Vertex `a` sees and is seen by everyone, with `s + 1` colors and `s`
    /// guesses. The child is the game without `a` and with every other
    /// guess count multiplied by `s + 1`.
    RemoveStrongVertex { a: Vertex },
    /// One child per part, in order; the parts partition the vertices and
    /// no arc runs from a later part back to an earlier one.
    SccSplit { parts: Vec<Vec<Vertex>> },
    /// Path with `2s` colors at vertex 0 and `4s - 1` elsewhere, `s` guesses
    /// everywhere, one vertex longer than its child of the same shape.
    PathStep,
    /// Same graph and guesses as the child, hatness at least as large.
    HatnessIncrease,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::CliqueDeficit => "clique_deficit",
            Rule::BruteForced { .. } => "brute_forced",
            Rule::GlueAtVertex { .. } => "glue_at_vertex",
            Rule::AddHalfEdge { .. } => "add_half_edge",
            Rule::RemoveStrongVertex { .. } => "remove_strong_vertex",
            Rule::SccSplit { .. } => "scc_split",
            Rule::PathStep => "path_step",
            Rule::HatnessIncrease => "hatness_increase",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LosingCertificate {
    pub game: HatGame,
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<LosingCertificate>,
}

impl LosingCertificate {
    pub fn leaf(game: HatGame, rule: Rule) -> Self {
        LosingCertificate { game, rule, children: Vec::new() }
    }

    pub fn node(game: HatGame, rule: Rule, children: Vec<LosingCertificate>) -> Self {
        LosingCertificate { game, rule, children }
    }

    /// Number of rule nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut stack = alloc::vec![self];
        while let Some(c) = stack.pop() {
            n += 1;
            stack.extend(&c.children);
        }
        n
    }
}

/// Game obtained by gluing `second` onto `first`, identifying `a2` with `a1`.
pub fn glue_games(first: &HatGame, a1: Vertex, second: &HatGame, a2: Vertex) -> HatGame {
    let n1 = first.vertex_count();
    let n2 = second.vertex_count();
    let index = |v: Vertex| -> Vertex {
        if v == a2 {
            a1
        } else if v < a2 {
            n1 + v
        } else {
            n1 + v - 1
        }
    };
    let mut graph = crate::game::VisibilityGraph::new(n1 + n2 - 1);
    for (u, v) in first.graph.arcs() {
        graph.add_arc(u, v);
    }
    for (u, v) in second.graph.arcs() {
        graph.add_arc(index(u), index(v));
    }
    let mut hatness = first.hatness.clone();
    let mut guesses = first.guesses.clone();
    for v in (0..n2).filter(|&v| v != a2) {
        hatness.push(second.hatness[v]);
        guesses.push(second.guesses[v]);
    }
    HatGame::new(graph, hatness, guesses)
}
