//! JSON document form of a game.
//!
//! `{"vertices": n, "labels": [...], "edges": [[u,v],...], "arcs": [[u,v],...],
//! "h": [...], "g": [...], "hint": {"vertex": b, "width": w} | null}`.
//! Edges expand to arc pairs and the union with `arcs` is taken. Games
//! serialize canonically with sorted arcs only.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::game::{HatGame, Hint, Vertex, VisibilityGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default)]
    pub arcs: Vec<[Vertex; 2]>,
    pub h: Vec<u32>,
    pub g: Vec<u32>,
    #[serde(default)]
    pub hint: Option<Hint>,
}

impl From<&HatGame> for GameDoc {
    fn from(game: &HatGame) -> Self {
        GameDoc {
            vertices: game.vertex_count(),
            labels: game.graph.labels().map(<[String]>::to_vec),
            edges: Vec::new(),
            arcs: game.graph.arcs().map(|(u, v)| [u, v]).collect(),
            h: game.hatness.clone(),
            g: game.guesses.clone(),
            hint: game.hint,
        }
    }
}

impl From<GameDoc> for HatGame {
    /// Builds the game with guess clamping; invariants are left to
    /// [`crate::game::validate_game`].
    fn from(doc: GameDoc) -> Self {
        let mut graph = VisibilityGraph::new(doc.vertices);
        for [u, v] in doc.edges {
            graph.add_edge(u, v);
        }
        for [u, v] in doc.arcs {
            graph.add_arc(u, v);
        }
        graph.set_labels(doc.labels);
        HatGame::new(graph, doc.h, doc.g).with_hint(doc.hint)
    }
}

impl Serialize for HatGame {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GameDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HatGame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        GameDoc::deserialize(d).map(HatGame::from)
    }
}
