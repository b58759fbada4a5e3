//! Games, placements and graph-structural helpers.
//!
//! Vertices are dense indices `0..n`. A visibility graph is directed: the arc
//! `(u, v)` means the sage at `u` sees the hat of `v`. Undirected edges are
//! stored as both arcs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

#[derive(Debug, Clone, Default, Eq)]
pub struct VisibilityGraph {
    vertex_count: usize,
    arcs: BTreeSet<(Vertex, Vertex)>,
    labels: Option<Vec<String>>,
}

impl PartialEq for VisibilityGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.arcs == other.arcs
    }
}

impl VisibilityGraph {
    pub fn new(vertex_count: usize) -> Self {
        VisibilityGraph { vertex_count, arcs: BTreeSet::new(), labels: None }
    }

    /// Complete graph: every ordered pair of distinct vertices is an arc.
    pub fn complete(vertex_count: usize) -> Self {
        let mut g = Self::new(vertex_count);
        for u in 0..vertex_count {
            for v in 0..vertex_count {
                if u != v {
                    g.add_arc(u, v);
                }
            }
        }
        g
    }

    /// Undirected path `0 - 1 - ... - (n-1)`.
    pub fn path(vertex_count: usize) -> Self {
        let mut g = Self::new(vertex_count);
        for v in 1..vertex_count {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Undirected star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn from_arcs(vertex_count: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Self::new(vertex_count);
        for (u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        self.labels = labels;
    }

    /// Adds the arc `u -> v`. Invalid arcs are stored as given and reported
    /// by [`validate_game`].
    pub fn add_arc(&mut self, u: Vertex, v: Vertex) {
        self.arcs.insert((u, v));
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.add_arc(u, v);
        self.add_arc(v, u);
    }

    pub fn remove_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        self.arcs.remove(&(u, v))
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs.iter().copied()
    }

    /// Vertices seen by `v`, ascending.
    pub fn out_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.arcs.range((v, 0)..(v + 1, 0)).map(|&(_, w)| w)
    }

    /// Vertices that see `v`, ascending.
    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.arcs.iter().filter(move |&&(_, w)| w == v).map(|&(u, _)| u)
    }

    /// Out-adjacency lists for every vertex.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = alloc::vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.arcs {
            if u < self.vertex_count {
                adj[u].push(v);
            }
        }
        adj
    }

    /// True when `u` and `v` see each other.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count;
        self.arcs.len() == n * n.saturating_sub(1)
            && self.arcs.iter().all(|&(u, v)| u != v && u < n && v < n)
    }
}

/// The adversary tells the hint vertex a cyclic window of `width`
/// consecutive colors containing its own color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hint {
    pub vertex: Vertex,
    pub width: u32,
}

impl Hint {
    /// Whether `color` lies in the window starting at `start`.
    pub fn window_contains(&self, hatness: u32, start: Color, color: Color) -> bool {
        (color + hatness - start % hatness) % hatness < self.width
    }
}

/// A hat guessing game: visibility graph, hatness and guess counts, and an
/// optional hint designation.
#[derive(Debug, Clone, Default)]
pub struct HatGame {
    pub graph: VisibilityGraph,
    pub hatness: Vec<u32>,
    pub guesses: Vec<u32>,
    pub hint: Option<Hint>,
    /// Vertices whose guess count was clamped down to their hatness.
    pub clamped: Vec<Vertex>,
}

impl PartialEq for HatGame {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.hatness == other.hatness
            && self.guesses == other.guesses
            && self.hint == other.hint
    }
}

impl Eq for HatGame {}

impl HatGame {
    /// Builds a game, clamping guess counts that exceed the hatness.
    pub fn new(graph: VisibilityGraph, hatness: Vec<u32>, mut guesses: Vec<u32>) -> Self {
        let mut clamped = Vec::new();
        for (v, (g, &h)) in guesses.iter_mut().zip(&hatness).enumerate() {
            if *g > h {
                *g = h;
                clamped.push(v);
            }
        }
        HatGame { graph, hatness, guesses, hint: None, clamped }
    }

    /// Same game with uniform hatness and guess counts.
    pub fn uniform(graph: VisibilityGraph, hatness: u32, guesses: u32) -> Self {
        let n = graph.vertex_count();
        Self::new(graph, alloc::vec![hatness; n], alloc::vec![guesses; n])
    }

    pub fn with_hint(mut self, hint: Option<Hint>) -> Self {
        self.hint = hint;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of hat placements, if it fits in a `u128`.
    pub fn placement_count(&self) -> Option<u128> {
        self.hatness.iter().try_fold(1u128, |acc, &h| acc.checked_mul(h as u128))
    }

    /// Validates and returns `self`, or the list of violations.
    pub fn checked(self) -> Result<Self> {
        let v = validate_game(&self);
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidGame(v))
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
        }
    }
}

/// One broken invariant of a game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    EmptyGame,
    SelfArc { vertex: Vertex },
    ArcOutOfRange { from: Vertex, to: Vertex },
    LengthMismatch { field: String, len: usize, expected: usize },
    ZeroHatness { vertex: Vertex },
    GuessExceedsHatness { vertex: Vertex, guesses: u32, hatness: u32 },
    HintVertexOutOfRange { vertex: Vertex },
    HintWidth { vertex: Vertex, width: u32, guesses: u32, hatness: u32 },
    LabelCount { len: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGame => write!(f, "game has no vertices"),
            Violation::SelfArc { vertex } => write!(f, "self-arc at {vertex}"),
            Violation::ArcOutOfRange { from, to } => write!(f, "arc ({from}, {to}) out of range"),
            Violation::LengthMismatch { field, len, expected } => {
                write!(f, "{field} has {len} entries, expected {expected}")
            }
            Violation::ZeroHatness { vertex } => write!(f, "zero hatness at {vertex}"),
            Violation::GuessExceedsHatness { vertex, guesses, hatness } => {
                write!(f, "guess exceeds hatness at {vertex} ({guesses} > {hatness})")
            }
            Violation::HintVertexOutOfRange { vertex } => {
                write!(f, "hint vertex {vertex} out of range")
            }
            Violation::HintWidth { vertex, width, guesses, hatness } => write!(
                f,
                "hint width {width} at {vertex} outside [{guesses}, {hatness}]"
            ),
            Violation::LabelCount { len, expected } => {
                write!(f, "{len} labels for {expected} vertices")
            }
        }
    }
}

/// Lists every broken invariant of `game`; empty when the game is well formed.
pub fn validate_game(game: &HatGame) -> Vec<Violation> {
    let n = game.vertex_count();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Violation::EmptyGame);
    }
    for (u, v) in game.graph.arcs() {
        if u >= n || v >= n {
            out.push(Violation::ArcOutOfRange { from: u, to: v });
        } else if u == v {
            out.push(Violation::SelfArc { vertex: u });
        }
    }
    for (field, len) in [("h", game.hatness.len()), ("g", game.guesses.len())] {
        if len != n {
            out.push(Violation::LengthMismatch { field: field.into(), len, expected: n });
        }
    }
    if let Some(labels) = game.graph.labels() {
        if labels.len() != n {
            out.push(Violation::LabelCount { len: labels.len(), expected: n });
        }
    }
    for (v, (&h, &g)) in game.hatness.iter().zip(&game.guesses).enumerate() {
        if h == 0 {
            out.push(Violation::ZeroHatness { vertex: v });
        }
        if g > h {
            out.push(Violation::GuessExceedsHatness { vertex: v, guesses: g, hatness: h });
        }
    }
    if let Some(hint) = game.hint {
        if hint.vertex >= n || hint.vertex >= game.hatness.len() || hint.vertex >= game.guesses.len()
        {
            out.push(Violation::HintVertexOutOfRange { vertex: hint.vertex });
        } else {
            let (h, g) = (game.hatness[hint.vertex], game.guesses[hint.vertex]);
            if hint.width < g || hint.width > h || hint.width == 0 {
                out.push(Violation::HintWidth { vertex: hint.vertex, width: hint.width, guesses: g, hatness: h });
            }
        }
    }
    out
}

/// A total color assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HatPlacement(pub Vec<Color>);

impl HatPlacement {
    pub fn validate(&self, game: &HatGame) -> Result<()> {
        if self.0.len() != game.vertex_count() {
            return Err(Error::BadPlacement(format!(
                "{} colors for {} vertices",
                self.0.len(),
                game.vertex_count()
            )));
        }
        for (v, (&c, &h)) in self.0.iter().zip(&game.hatness).enumerate() {
            if c >= h {
                return Err(Error::BadPlacement(format!("color {c} at vertex {v} exceeds hatness {h}")));
            }
        }
        Ok(())
    }
}

/// An induced subgame with its relabeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgame {
    pub game: HatGame,
    /// `mapping[new] = old`, ascending.
    pub mapping: Vec<Vertex>,
    /// The parent's hint vertex was outside the set.
    pub hint_dropped: bool,
}

/// Restricts `game` to `vertices` (relabeled in ascending order), keeping
/// only internal arcs.
pub fn induced_subgame(game: &HatGame, vertices: &[Vertex]) -> Result<Subgame> {
    let mut mapping: Vec<Vertex> = vertices.to_vec();
    mapping.sort_unstable();
    mapping.dedup();
    if mapping.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    for &v in &mapping {
        game.check_vertex(v)?;
    }
    let n = game.vertex_count();
    let mut new_index = alloc::vec![usize::MAX; n];
    for (i, &v) in mapping.iter().enumerate() {
        new_index[v] = i;
    }
    let mut graph = VisibilityGraph::new(mapping.len());
    for (u, v) in game.graph.arcs() {
        if u < n && v < n && new_index[u] != usize::MAX && new_index[v] != usize::MAX {
            graph.add_arc(new_index[u], new_index[v]);
        }
    }
    if let Some(labels) = game.graph.labels() {
        graph.set_labels(Some(mapping.iter().map(|&v| labels.get(v).cloned().unwrap_or_default()).collect()));
    }
    let hatness = mapping.iter().map(|&v| game.hatness[v]).collect();
    let guesses = mapping.iter().map(|&v| game.guesses[v]).collect();
    let (hint, hint_dropped) = match game.hint {
        Some(h) if new_index[h.vertex] != usize::MAX => {
            (Some(Hint { vertex: new_index[h.vertex], width: h.width }), false)
        }
        Some(_) => (None, true),
        None => (None, false),
    };
    let sub = HatGame { graph, hatness, guesses, hint, clamped: Vec::new() };
    Ok(Subgame { game: sub, mapping, hint_dropped })
}

/// Mixed-radix enumeration of placements, vertex 0 most significant.
#[derive(Debug, Clone)]
pub struct PlacementSpace {
    radices: Vec<u32>,
}

impl PlacementSpace {
    pub fn new(radices: Vec<u32>) -> Self {
        PlacementSpace { radices }
    }

    pub fn of(game: &HatGame) -> Self {
        Self::new(game.hatness.clone())
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn count(&self) -> Option<u128> {
        self.radices.iter().try_fold(1u128, |acc, &h| acc.checked_mul(h as u128))
    }

    /// Writes the placement with lexicographic rank `index` into `out`.
    pub fn decode(&self, mut index: u128, out: &mut [Color]) {
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = (index % r as u128) as Color;
            index /= r as u128;
        }
    }

    pub fn encode(&self, colors: &[Color]) -> u128 {
        colors.iter().zip(&self.radices).fold(0u128, |acc, (&c, &r)| acc * r as u128 + c as u128)
    }

    /// Advances to the next placement; returns false after the last one.
    pub fn advance(&self, colors: &mut [Color]) -> bool {
        for (slot, &r) in colors.iter_mut().zip(&self.radices).rev() {
            *slot += 1;
            if *slot < r {
                return true;
            }
            *slot = 0;
        }
        false
    }
}
