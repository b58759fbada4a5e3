use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::game::{Color, HatGame, Vertex, VisibilityGraph};
use crate::strategy::{Arena, ColorCodec, Evaluator, GuessSet, Provenance, Strategy};

/// Rule by which the spectators of the replaced host vertex agree on one
/// vertex of `S` to stand in for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Arbitrator {
    /// `S = {vertex}`, no reduced vertices.
    Singleton { vertex: Vertex },
    /// `S` closed under out-neighbors, so its first-stage guesses can be
    /// recomputed from its colors alone; `reduced` is `I`.
    OutClosed { set: Vec<Vertex>, reduced: Vec<Vertex> },
}

impl Arbitrator {
    fn set(&self) -> Vec<Vertex> {
        match self {
            Arbitrator::Singleton { vertex } => alloc::vec![*vertex],
            Arbitrator::OutClosed { set, .. } => {
                let mut s = set.clone();
                s.sort_unstable();
                s.dedup();
                s
            }
        }
    }

    fn reduced(&self) -> &[Vertex] {
        match self {
            Arbitrator::Singleton { .. } => &[],
            Arbitrator::OutClosed { reduced, .. } => reduced,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Role {
    Plain,
    /// `c * host_h + c'`
    Composite,
    /// `c * residual + t`
    Reduced { codec: ColorCodec, guesses: u32 },
}

#[derive(Debug)]
struct JoinEval {
    base: Strategy,
    host: Strategy,
    z: Vertex,
    host_h: u32,
    roles: Vec<Role>,
    set: Vec<Vertex>,
    singleton: bool,
    /// host vertex -> joined index (unused for `z`)
    host_index: Vec<Vertex>,
}

impl JoinEval {
    fn first_coordinate(&self, u: Vertex, color: Color) -> Color {
        match self.roles[u] {
            Role::Plain => color,
            Role::Composite => color / self.host_h,
            Role::Reduced { codec: ColorCodec::Reduced { residual, .. }, .. } => color / residual,
            Role::Reduced { .. } => unreachable!("reduced role with pair codec"),
        }
    }
}

impl Evaluator for JoinEval {
    fn evaluate(&self, colors: &[Color], _hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena) {
        let nb = self.roles.len();
        let mut base_colors = arena.take_colors(nb);
        for u in 0..nb {
            base_colors[u] = self.first_coordinate(u, colors[u]);
        }
        let mut base_out = arena.take_sets(nb);
        self.base.evaluate_into(&base_colors, None, &mut base_out, arena);
        for &u in &self.set {
            if let Role::Reduced { guesses, codec: ColorCodec::Reduced { hatness, .. } } = self.roles[u] {
                base_out[u].pad_to(guesses as usize, hatness);
            }
        }

        // Stage one: who stands in for z, and with which host color.
        let chosen = if self.singleton {
            self.set[0]
        } else {
            self.set.iter().copied().find(|&u| base_out[u].contains(base_colors[u])).unwrap_or(self.set[0])
        };
        let z_color = match self.roles[chosen] {
            Role::Reduced { codec: ColorCodec::Reduced { divisor, residual, .. }, .. } => {
                let t = colors[chosen] % residual;
                let sigma = base_out[chosen].rank(base_colors[chosen]).map_or(0, |r| r as u32 % divisor);
                sigma * residual + t
            }
            _ => colors[chosen] % self.host_h,
        };

        let nh = self.host_index.len();
        let mut host_colors = arena.take_colors(nh);
        for w in 0..nh {
            host_colors[w] = if w == self.z { z_color } else { colors[self.host_index[w]] };
        }
        let mut host_out = arena.take_sets(nh);
        self.host.evaluate_into(&host_colors, None, &mut host_out, arena);

        // Stage two.
        let b = &host_out[self.z];
        for u in 0..nb {
            let slot = &mut out[u];
            slot.clear();
            match self.roles[u] {
                Role::Plain => slot.assign(&base_out[u]),
                Role::Composite => {
                    for c in base_out[u].iter() {
                        for x in b.iter() {
                            slot.push(c * self.host_h + x);
                        }
                    }
                }
                Role::Reduced { codec: ColorCodec::Reduced { divisor, quotient, residual, .. }, .. } => {
                    let a = base_out[u].as_slice();
                    for rho in 0..quotient {
                        for x in b.iter() {
                            let (sigma, t) = (x / residual, x % residual);
                            slot.push(a[(rho * divisor + sigma) as usize] * residual + t);
                        }
                    }
                }
                Role::Reduced { .. } => unreachable!("reduced role with pair codec"),
            }
        }
        for w in 0..nh {
            if w != self.z {
                out[self.host_index[w]].assign(&host_out[w]);
            }
        }
        arena.give_sets(host_out);
        arena.give_colors(host_colors);
        arena.give_sets(base_out);
        arena.give_colors(base_colors);
    }
}

/// Joins `base` and `host` by letting the vertices of the arbitrator's set
/// `S` play the role of host vertex `z`.
///
/// The joined game has `base`'s vertices first (same indices) followed by
/// the host's vertices other than `z` in ascending order. Every `u` in `S`
/// sees what `z` saw and is seen by whoever saw `z`. Vertices of `S` outside
/// `I` get `h(u) * h'(z)` colors and `g(u) * g'(z)` guesses; a vertex of `I`
/// with divisor `s` gets `h(u) * h'(z) / s` colors and `g(u) * g'(z) / s`
/// guesses.
pub fn reduced_join(
    base: &Strategy,
    arb: &Arbitrator,
    host: &Strategy,
    z: Vertex,
    divisors: &[(Vertex, u32)],
) -> Result<Strategy> {
    let (bg, hg) = (base.game(), host.game());
    if bg.hint.is_some() || hg.hint.is_some() {
        return Err(Error::Unsupported("joins of hint games".into()));
    }
    hg.check_vertex(z)?;
    let set = arb.set();
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    for &u in &set {
        bg.check_vertex(u)?;
    }
    let singleton = matches!(arb, Arbitrator::Singleton { .. });
    if !singleton {
        for &u in &set {
            if let Some(w) = bg.graph.out_neighbors(u).find(|w| set.binary_search(w).is_err()) {
                return Err(precondition(format!("arbitrator set is not out-closed: {u} sees {w} outside it")));
            }
        }
    }
    let mut reduced: Vec<Vertex> = arb.reduced().to_vec();
    reduced.sort_unstable();
    reduced.dedup();
    let mut keys: Vec<Vertex> = divisors.iter().map(|&(v, _)| v).collect();
    keys.sort_unstable();
    if keys != reduced {
        return Err(precondition("divisors must be given exactly for the reduced vertices"));
    }
    let hz = hg.hatness[z];
    let gz = hg.guesses[z];
    let nb = bg.vertex_count();
    let mut roles = alloc::vec![Role::Plain; nb];
    let mut hatness = bg.hatness.clone();
    let mut guesses = bg.guesses.clone();
    for &u in &set {
        roles[u] = Role::Composite;
        hatness[u] = bg.hatness[u].checked_mul(hz).ok_or(Error::Overflow("joined hatness"))?;
        guesses[u] = bg.guesses[u] * gz;
    }
    for &(u, s) in divisors {
        if set.binary_search(&u).is_err() {
            return Err(precondition(format!("reduced vertex {u} is not in the arbitrator set")));
        }
        let g = bg.guesses[u];
        if s == 0 || g % s != 0 || hz % s != 0 {
            return Err(precondition(format!("divisor {s} must divide g({u}) = {g} and h'(z) = {hz}")));
        }
        let (quotient, residual) = (g / s, hz / s);
        let codec = ColorCodec::Reduced { hatness: bg.hatness[u], divisor: s, quotient, residual };
        roles[u] = Role::Reduced { codec, guesses: g };
        hatness[u] = bg.hatness[u] * residual;
        guesses[u] = quotient * gz;
    }

    let nh = hg.vertex_count();
    let mut host_index = alloc::vec![usize::MAX; nh];
    let mut next = nb;
    for (w, slot) in host_index.iter_mut().enumerate() {
        if w != z {
            *slot = next;
            next += 1;
            hatness.push(hg.hatness[w]);
            guesses.push(hg.guesses[w]);
        }
    }
    let mut graph = VisibilityGraph::new(next);
    for (u, v) in bg.graph.arcs() {
        graph.add_arc(u, v);
    }
    for (a, b) in hg.graph.arcs() {
        match (a == z, b == z) {
            (false, false) => graph.add_arc(host_index[a], host_index[b]),
            (true, _) => set.iter().for_each(|&u| graph.add_arc(u, host_index[b])),
            (_, true) => set.iter().for_each(|&u| graph.add_arc(host_index[a], u)),
        }
    }
    let game = HatGame::new(graph, hatness, guesses);
    let div_param: Vec<u32> = divisors.iter().map(|&(_, s)| s).collect();
    let prov = Provenance::new("reduced_join")
        .param("arbitrator", if singleton { "singleton" } else { "out_closed" })
        .param("set", &set[..])
        .param("reduced", &reduced[..])
        .param("divisors", &div_param[..])
        .param("z", z)
        .child(base.provenance())
        .child(host.provenance());
    let eval = JoinEval { base: base.clone(), host: host.clone(), z, host_h: hz, roles, set, singleton, host_index };
    Strategy::new(game, eval, prov)
}

/// Product of two games sharing vertex `v` of `first` and `z` of `second`.
pub fn product_at_vertex(first: &Strategy, v: Vertex, second: &Strategy, z: Vertex) -> Result<Strategy> {
    let s = reduced_join(first, &Arbitrator::Singleton { vertex: v }, second, z, &[])?;
    let prov = Provenance::new("product").param("v", v).param("z", z).child(first.provenance()).child(second.provenance());
    Ok(s.with_provenance(prov))
}

/// Substitutes the whole of `inner` for host vertex `z`, reducing every
/// inner vertex by the common divisor `s`.
pub fn substitute(inner: &Strategy, host: &Strategy, z: Vertex, s: u32) -> Result<Strategy> {
    let all: Vec<Vertex> = (0..inner.game().vertex_count()).collect();
    let divisors: Vec<(Vertex, u32)> = all.iter().map(|&v| (v, s)).collect();
    let arb = Arbitrator::OutClosed { set: all.clone(), reduced: all };
    let joined = reduced_join(inner, &arb, host, z, &divisors)?;
    let prov = Provenance::new("substitute").param("z", z).param("s", s).child(inner.provenance()).child(host.provenance());
    Ok(joined.with_provenance(prov))
}
