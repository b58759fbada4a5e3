//! Constructors that weaken visibility: half-edge removal, strong vertex
//! removal and attachment, and vertex relabeling.

use alloc::format;
use alloc::vec::Vec;

use super::{clique_strategy, substitute};
use crate::error::{precondition, Error, Result};
use crate::game::{Color, HatGame, Vertex};
use crate::strategy::{Arena, Evaluator, GuessSet, Provenance, Strategy};

#[derive(Debug)]
struct BlindEval {
    inner: Strategy,
    /// Vertices that no longer see `hidden` and guess the union over its
    /// colors; empty means every vertex except `hidden` itself.
    blind: Vec<Vertex>,
    hidden: Vertex,
    hidden_h: u32,
    /// Whether `hidden` is dropped from the game.
    drop_hidden: bool,
}

impl Evaluator for BlindEval {
    fn evaluate(&self, colors: &[Color], hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena) {
        let n = self.inner.game().vertex_count();
        let mut full = arena.take_colors(n);
        if self.drop_hidden {
            full[..self.hidden].copy_from_slice(&colors[..self.hidden]);
            full[self.hidden + 1..].copy_from_slice(&colors[self.hidden..]);
        } else {
            full.copy_from_slice(colors);
        }
        let mut scratch = arena.take_sets(n);
        let mut acc = arena.take_sets(n);
        let actual = full[self.hidden];
        for c in 0..self.hidden_h {
            full[self.hidden] = c;
            self.inner.evaluate_into(&full, hint, &mut scratch, arena);
            if self.drop_hidden {
                for v in (0..n).filter(|&v| v != self.hidden) {
                    scratch[v].iter().for_each(|x| acc[v].push(x));
                }
            } else {
                for &v in &self.blind {
                    scratch[v].iter().for_each(|x| acc[v].push(x));
                }
            }
        }
        if self.drop_hidden {
            for v in (0..n).filter(|&v| v != self.hidden) {
                let slot = &mut out[if v > self.hidden { v - 1 } else { v }];
                slot.assign(&acc[v]);
                slot.normalize();
            }
        } else {
            full[self.hidden] = actual;
            self.inner.evaluate_into(&full, hint, out, arena);
            for &v in &self.blind {
                out[v].assign(&acc[v]);
                out[v].normalize();
            }
        }
        arena.give_sets(acc);
        arena.give_sets(scratch);
        arena.give_colors(full);
    }
}

/// Removes arc `u -> v`; `u` guesses the union of its guesses over all
/// colors of `v`, with `min(g(u) * h(v), h(u))` guesses.
pub fn remove_half_edge(strategy: &Strategy, u: Vertex, v: Vertex) -> Result<Strategy> {
    let game = strategy.game();
    game.check_vertex(u)?;
    game.check_vertex(v)?;
    if !game.graph.has_arc(u, v) {
        return Err(precondition(format!("arc {u} -> {v} is absent")));
    }
    let mut next = game.clone();
    next.graph.remove_arc(u, v);
    next.guesses[u] = (game.guesses[u] as u64 * game.hatness[v] as u64).min(game.hatness[u] as u64) as u32;
    let prov = Provenance::new("half_edge_removal").param("u", u).param("v", v).child(strategy.provenance());
    let eval = BlindEval { inner: strategy.clone(), blind: alloc::vec![u], hidden: v, hidden_h: game.hatness[v], drop_hidden: false };
    Strategy::new(next, eval, prov)
}

/// Removes a strong vertex `a` (adjacent to all others, `h(a) = s + 1`,
/// `g(a) = s`); every other vertex guesses the union over `a`'s colors, so
/// guess counts grow to `(s + 1) * g` (capped at the hatness).
pub fn strong_vertex_remove(strategy: &Strategy, a: Vertex) -> Result<Strategy> {
    let game = strategy.game();
    game.check_vertex(a)?;
    if game.hint.is_some() {
        return Err(Error::Unsupported("strong vertex removal on hint games".into()));
    }
    let n = game.vertex_count();
    let (h, g) = (game.hatness[a], game.guesses[a]);
    if h != g + 1 {
        return Err(precondition(format!("vertex {a} is not strong: h = {h}, g = {g}")));
    }
    if n < 2 {
        return Err(Error::EmptyVertexSet);
    }
    if let Some(v) = (0..n).find(|&v| v != a && !(game.graph.has_arc(a, v) && game.graph.has_arc(v, a))) {
        return Err(precondition(format!("vertex {a} is not adjacent to {v}")));
    }
    let keep: Vec<Vertex> = (0..n).filter(|&v| v != a).collect();
    let sub = crate::game::induced_subgame(game, &keep)?;
    let mut next = sub.game;
    for (i, &v) in keep.iter().enumerate() {
        next.guesses[i] = (game.guesses[v] as u64 * h as u64).min(game.hatness[v] as u64) as u32;
    }
    let prov = Provenance::new("strong_vertex").param("mode", "remove").param("a", a).param("s", g).child(strategy.provenance());
    let eval = BlindEval { inner: strategy.clone(), blind: Vec::new(), hidden: a, hidden_h: h, drop_hidden: true };
    Strategy::new(next, eval, prov)
}

/// Adds a strong vertex with `s` guesses out of `s + 1` colors adjacent to
/// every vertex, dividing all guess counts by `s + 1`. The new vertex is
/// the last one.
pub fn strong_vertex_attach(strategy: &Strategy, s: u32) -> Result<Strategy> {
    if s == 0 {
        return Err(precondition("strong vertex needs s >= 1"));
    }
    if let Some(v) = strategy.game().guesses.iter().position(|&g| g % (s + 1) != 0) {
        return Err(precondition(format!("g({v}) is not divisible by {}", s + 1)));
    }
    let edge = clique_strategy(&[s + 1, s + 1], &[s, 1])?;
    let joined = substitute(strategy, &edge, 1, s + 1)?;
    let prov = Provenance::new("strong_vertex").param("mode", "attach").param("s", s).child(strategy.provenance());
    Ok(joined.with_provenance(prov))
}

#[derive(Debug)]
struct PermuteEval {
    inner: Strategy,
    /// `order[new] = old`
    order: Vec<Vertex>,
}

impl Evaluator for PermuteEval {
    fn evaluate(&self, colors: &[Color], hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena) {
        let n = self.order.len();
        let mut inner_colors = arena.take_colors(n);
        for (new, &old) in self.order.iter().enumerate() {
            inner_colors[old] = colors[new];
        }
        let mut inner_out = arena.take_sets(n);
        self.inner.evaluate_into(&inner_colors, hint, &mut inner_out, arena);
        for (new, &old) in self.order.iter().enumerate() {
            out[new].assign(&inner_out[old]);
        }
        arena.give_sets(inner_out);
        arena.give_colors(inner_colors);
    }
}

/// Relabels vertices: new vertex `i` is old vertex `order[i]`.
pub fn permute(strategy: &Strategy, order: &[Vertex]) -> Result<Strategy> {
    let game = strategy.game();
    let n = game.vertex_count();
    let mut seen = alloc::vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || core::mem::replace(&mut seen[v], true)) {
        return Err(precondition("order is not a permutation of the vertices"));
    }
    let mut new_index = alloc::vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let mut graph = crate::game::VisibilityGraph::new(n);
    for (u, v) in game.graph.arcs() {
        graph.add_arc(new_index[u], new_index[v]);
    }
    if let Some(labels) = game.graph.labels() {
        graph.set_labels(Some(order.iter().map(|&v| labels[v].clone()).collect()));
    }
    let hatness = order.iter().map(|&v| game.hatness[v]).collect();
    let guesses = order.iter().map(|&v| game.guesses[v]).collect();
    let hint = game.hint.map(|h| crate::game::Hint { vertex: new_index[h.vertex], width: h.width });
    let next = HatGame::new(graph, hatness, guesses).with_hint(hint);
    let prov = Provenance::new("permute").param("order", order).child(strategy.provenance());
    Strategy::new(next, PermuteEval { inner: strategy.clone(), order: order.to_vec() }, prov)
}
