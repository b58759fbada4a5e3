//! Hint games: a single hinted vertex, hint transfer along a new edge, and
//! dropping a hint that carries no information.

use alloc::format;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::game::{Color, HatGame, Hint, Vertex, VisibilityGraph};
use crate::strategy::{Arena, Evaluator, GuessSet, Provenance, Strategy};

/// The `h_a x h_b` marking table: row `i` holds letters in columns
/// `i*w_b, ..., i*w_b + w_b - 1 (mod h_b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LTable {
    pub h_a: u32,
    pub h_b: u32,
    pub w_a: u32,
    pub w_b: u32,
    pub g_a: u32,
}

impl LTable {
    #[inline]
    pub fn is_letter(&self, row: u32, col: u32) -> bool {
        let shift = (row as u64 * self.w_b as u64) % self.h_b as u64;
        ((col as u64 + self.h_b as u64 - shift) % self.h_b as u64) < self.w_b as u64
    }

    /// Largest number of empty cells of one column within `w_a` cyclically
    /// consecutive rows.
    pub fn max_empty_in_window(&self) -> u32 {
        let (ha, wa) = (self.h_a, self.w_a.min(self.h_a));
        let mut worst = 0;
        for col in 0..self.h_b {
            let empty = |r: u32| u32::from(!self.is_letter(r % ha, col));
            let mut count: u32 = (0..wa).map(empty).sum();
            worst = worst.max(count);
            for start in 1..ha {
                count = count + empty(start + wa - 1) - empty(start - 1);
                worst = worst.max(count);
            }
        }
        worst
    }

    /// Rows of the window starting at `start` whose cell in column `col` is
    /// empty, ascending.
    pub fn empty_rows(&self, start: u32, col: u32, out: &mut GuessSet) {
        out.clear();
        for d in 0..self.w_a {
            let row = (start + d) % self.h_a;
            if !self.is_letter(row, col) {
                out.push(row);
            }
        }
        out.normalize();
    }
}

/// Builds the table, refusing unless `h_b | w_b * h_a` and
/// `w_a * w_b >= (w_a - g_a) * h_b`; the window property is then checked
/// exhaustively.
pub fn build_l_table(h_a: u32, h_b: u32, w_a: u32, w_b: u32, g_a: u32) -> Result<LTable> {
    if h_a == 0 || h_b == 0 || w_a == 0 || w_b == 0 || w_a > h_a || w_b > h_b || g_a > w_a {
        return Err(precondition(format!(
            "table needs 1 <= w_a <= h_a, 1 <= w_b <= h_b, g_a <= w_a; got h_a={h_a} h_b={h_b} w_a={w_a} w_b={w_b} g_a={g_a}"
        )));
    }
    if (w_b as u64 * h_a as u64) % h_b as u64 != 0 {
        return Err(Error::Refused(format!("divisibility fails: h_b = {h_b} does not divide w_b*h_a = {}", w_b * h_a)));
    }
    let lhs = w_a as u64 * w_b as u64;
    let rhs = (w_a - g_a) as u64 * h_b as u64;
    if lhs < rhs {
        return Err(Error::Refused(format!("inequality fails: w_a*w_b = {lhs} < (w_a-g_a)*h_b = {rhs}")));
    }
    let table = LTable { h_a, h_b, w_a, w_b, g_a };
    let worst = table.max_empty_in_window();
    if worst > g_a {
        return Err(Error::Refused(format!("window property fails: {worst} empty cells > g_a = {g_a}")));
    }
    Ok(table)
}

#[derive(Debug)]
struct HintWindowEval {
    hatness: u32,
    width: u32,
}

impl Evaluator for HintWindowEval {
    fn evaluate(&self, _colors: &[Color], hint: Option<Color>, out: &mut [GuessSet], _arena: &mut Arena) {
        let x = hint.unwrap_or(0);
        out[0].clear();
        for d in 0..self.width {
            out[0].push((x + d) % self.hatness);
        }
        out[0].normalize();
    }
}

/// One vertex told a window of `w <= g` colors: it guesses the window.
pub fn hint_window(h: u32, g: u32, w: u32) -> Result<Strategy> {
    if w > g {
        return Err(precondition(format!("hint width {w} exceeds guesses {g}")));
    }
    let game = HatGame::new(VisibilityGraph::new(1), alloc::vec![h], alloc::vec![g])
        .with_hint(Some(Hint { vertex: 0, width: w }))
        .checked()?;
    let prov = Provenance::new("hint_window").param("h", h).param("g", g).param("w", w);
    Strategy::new(game, HintWindowEval { hatness: h, width: w }, prov)
}

#[derive(Debug)]
struct ExtendEval {
    inner: Strategy,
    table: LTable,
    a: Vertex,
    b: Vertex,
}

impl Evaluator for ExtendEval {
    fn evaluate(&self, colors: &[Color], hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena) {
        let b_start = ((colors[self.a] as u64 * self.table.w_b as u64) % self.table.h_b as u64) as Color;
        self.inner.evaluate_into(&colors[..self.a], Some(b_start), &mut out[..self.a], arena);
        self.table.empty_rows(hint.unwrap_or(0), colors[self.b], &mut out[self.a]);
    }
}

/// Appends vertex `A` (index `n`) joined to the hint vertex `B` by an edge
/// and moves the hint to `A` with width `w_a`.
///
/// `A` guesses the rows of its window whose cell in column `color(B)` is
/// empty; `B` takes the letter columns of row `color(A)` as its window.
pub fn hint_extend(inner: &Strategy, h_a: u32, g_a: u32, w_a: u32) -> Result<Strategy> {
    let game = inner.game();
    let hint = game.hint.ok_or_else(|| precondition("hint_extend needs a hint game"))?;
    let b = hint.vertex;
    if g_a > w_a {
        return Err(precondition(format!("g_a = {g_a} exceeds w_a = {w_a}")));
    }
    let table = build_l_table(h_a, game.hatness[b], w_a, hint.width, g_a)?;
    let a = game.vertex_count();
    let mut graph = VisibilityGraph::new(a + 1);
    for (u, v) in game.graph.arcs() {
        graph.add_arc(u, v);
    }
    graph.add_edge(a, b);
    let mut hatness = game.hatness.clone();
    hatness.push(h_a);
    let mut guesses = game.guesses.clone();
    guesses.push(g_a);
    let next = HatGame::new(graph, hatness, guesses).with_hint(Some(Hint { vertex: a, width: w_a })).checked()?;
    let prov = Provenance::new("hint_extend")
        .param("h_a", h_a)
        .param("g_a", g_a)
        .param("w_a", w_a)
        .param("b", b)
        .child(inner.provenance());
    Strategy::new(next, ExtendEval { inner: inner.clone(), table, a, b }, prov)
}

#[derive(Debug)]
struct ForgetEval {
    inner: Strategy,
}

impl Evaluator for ForgetEval {
    fn evaluate(&self, colors: &[Color], _hint: Option<Color>, out: &mut [GuessSet], arena: &mut Arena) {
        self.inner.evaluate_into(colors, Some(0), out, arena);
    }
}

/// Drops a full-width hint.
pub fn forget_hint(inner: &Strategy) -> Result<Strategy> {
    let game = inner.game();
    let hint = game.hint.ok_or_else(|| precondition("forget_hint needs a hint game"))?;
    if hint.width != game.hatness[hint.vertex] {
        return Err(precondition(format!(
            "hint width {} is narrower than h = {}",
            hint.width, game.hatness[hint.vertex]
        )));
    }
    let next = game.clone().with_hint(None);
    let prov = Provenance::new("forget_hint").child(inner.provenance());
    Strategy::new(next, ForgetEval { inner: inner.clone() }, prov)
}
