//! Exact decision of tiny games by search over lookup tables.
//!
//! Every pair (vertex, visible colors) is a variable whose value is a guess
//! set of exactly g(v) colors. Each placement keeps a count of unassigned
//! variables that could still cover it. An uncovered placement with one
//! candidate left forces that variable to guess its color; with none left
//! the branch dies. The next variable is the one with the fewest candidate
//! guess sets, ties broken by vertices with small tables first.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::{Color, HatGame, Vertex};
use crate::strategy::LookupStrategy;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_MAX_PLACEMENTS: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    /// Guess-set assignments tried before giving up.
    pub node_budget: u64,
    /// Largest placement space the coverage counters may span.
    pub max_placements: u128,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits { node_budget: DEFAULT_NODE_BUDGET, max_placements: DEFAULT_MAX_PLACEMENTS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Winning(LookupStrategy),
    Losing,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub decision: Decision,
    pub nodes: u64,
    /// Number of deterministic strategies, when it fits.
    pub strategy_space: Option<u128>,
}

impl SolveReport {
    pub fn is_winning(&self) -> bool {
        matches!(self.decision, Decision::Winning(_))
    }

    pub fn is_losing(&self) -> bool {
        self.decision == Decision::Losing
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Product over vertices of C(h, g) raised to the table size.
pub fn strategy_space(game: &HatGame) -> Option<u128> {
    let sizes = LookupStrategy::table_sizes(game).ok()?;
    let mut total: u128 = 1;
    for (v, &size) in sizes.iter().enumerate() {
        let choices = binomial(game.hatness[v], game.guesses[v].min(game.hatness[v]));
        for _ in 0..size {
            total = total.checked_mul(choices)?;
            if choices == 1 {
                break;
            }
        }
    }
    Some(total)
}

struct Frame {
    var: usize,
    candidates: Vec<u64>,
    next: usize,
    applied: Option<u64>,
}

struct Search<'a> {
    game: &'a HatGame,
    stride: Vec<u64>,
    nbrs: Vec<Vec<Vertex>>,
    /// Vertex and view of every variable.
    vars: Vec<(Vertex, usize)>,
    /// First variable of each vertex; `usize::MAX` for vertices that never guess.
    var_base: Vec<usize>,
    group_start: Vec<usize>,
    groups: Vec<u32>,
    assigned: Vec<bool>,
    covered: Vec<u32>,
    remaining: Vec<u32>,
    /// Per variable and color: uncovered placements left to this variable alone.
    forced: Vec<u32>,
    forced_start: Vec<usize>,
    forced_distinct: Vec<u32>,
}

impl Search<'_> {
    #[inline]
    fn color(&self, p: u32, v: Vertex) -> Color {
        ((p as u64 / self.stride[v]) % self.game.hatness[v] as u64) as Color
    }

    fn view(&self, p: u32, v: Vertex) -> usize {
        self.nbrs[v].iter().fold(0, |acc, &w| acc * self.game.hatness[w] as usize + self.color(p, w) as usize)
    }

    fn group(&self, x: usize) -> core::ops::Range<usize> {
        self.group_start[x]..self.group_start[x + 1]
    }

    /// The only unassigned variable of placement `p`.
    fn last_candidate(&self, p: u32) -> usize {
        (0..self.nbrs.len())
            .filter(|&u| self.var_base[u] != usize::MAX)
            .map(|u| self.var_base[u] + self.view(p, u))
            .find(|&y| !self.assigned[y])
            .expect("one candidate left")
    }

    /// Assigns `mask` to `x`; false when the branch is dead. Always applies
    /// fully so that [`Search::undo`] restores the exact state.
    fn apply(&mut self, x: usize, mask: u64) -> bool {
        let v = self.vars[x].0;
        self.assigned[x] = true;
        let mut ok = true;
        for i in self.group(x) {
            let p = self.groups[i];
            let pi = p as usize;
            self.remaining[pi] -= 1;
            if mask >> self.color(p, v) & 1 == 1 {
                self.covered[pi] += 1;
                continue;
            }
            if self.covered[pi] != 0 {
                continue;
            }
            match self.remaining[pi] {
                0 => ok = false,
                1 => {
                    let y = self.last_candidate(p);
                    let u = self.vars[y].0;
                    let slot = self.forced_start[y] + self.color(p, u) as usize;
                    self.forced[slot] += 1;
                    if self.forced[slot] == 1 {
                        self.forced_distinct[y] += 1;
                        if self.forced_distinct[y] > self.game.guesses[u] {
                            ok = false;
                        }
                    }
                }
                _ => {}
            }
        }
        ok
    }

    fn undo(&mut self, x: usize, mask: u64) {
        let v = self.vars[x].0;
        for i in self.group(x) {
            let p = self.groups[i];
            let pi = p as usize;
            if mask >> self.color(p, v) & 1 == 1 {
                self.covered[pi] -= 1;
            } else if self.covered[pi] == 0 && self.remaining[pi] == 1 {
                let y = self.last_candidate(p);
                let u = self.vars[y].0;
                let slot = self.forced_start[y] + self.color(p, u) as usize;
                self.forced[slot] -= 1;
                if self.forced[slot] == 0 {
                    self.forced_distinct[y] -= 1;
                }
            }
            self.remaining[pi] += 1;
        }
        self.assigned[x] = false;
    }

    /// Unassigned variable with the fewest candidate guess sets, earliest
    /// in static order on ties.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u128, usize)> = None;
        for x in 0..self.vars.len() {
            if self.assigned[x] {
                continue;
            }
            let v = self.vars[x].0;
            let (h, g, d) = (self.game.hatness[v], self.game.guesses[v].min(self.game.hatness[v]), self.forced_distinct[x]);
            let count = binomial(h - d, g - d);
            if best.map_or(true, |(c, _)| count < c) {
                best = Some((count, x));
                if count <= 1 {
                    break;
                }
            }
        }
        best.map(|(_, x)| x)
    }

    /// Guess masks of exactly `g` colors containing every forced color, in
    /// lexicographic order of the remaining colors.
    fn candidates(&self, x: usize) -> Vec<u64> {
        let v = self.vars[x].0;
        let h = self.game.hatness[v];
        let g = self.game.guesses[v].min(h);
        let forced_slots = &self.forced[self.forced_start[x]..self.forced_start[x] + h as usize];
        let forced = forced_slots.iter().enumerate().filter(|(_, &n)| n > 0).fold(0u64, |m, (c, _)| m | 1 << c);
        let free: Vec<Color> = (0..h).filter(|&c| forced >> c & 1 == 0).collect();
        let k = (g - forced.count_ones()) as usize;
        let mut out = Vec::new();
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            out.push(pick.iter().fold(forced, |m, &i| m | 1 << free[i]));
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if pick[i] < free.len() - k + i {
                    pick[i] += 1;
                    for j in i + 1..k {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Decides a hint-free game exactly, returning a winning lookup strategy
/// when one exists.
pub fn brute_force_decide(game: &HatGame, limits: SolveLimits) -> Result<SolveReport> {
    let game = game.clone().checked()?;
    if game.hint.is_some() {
        return Err(Error::Unsupported("brute force on hint games".into()));
    }
    if game.hatness.iter().any(|&h| h > 64) {
        return Err(Error::Unsupported("brute force with more than 64 colors at a vertex".into()));
    }
    let space = strategy_space(&game);
    let report = |decision, nodes| SolveReport { decision, nodes, strategy_space: space };
    let n = game.vertex_count();
    let guessing = game.guesses.iter().filter(|&&g| g > 0).count();
    let placements = match game.placement_count() {
        Some(p) if p <= limits.max_placements && p * (guessing.max(1) as u128) <= u32::MAX as u128 => p as usize,
        _ => return Ok(report(Decision::Undecided, 0)),
    };
    let sizes = LookupStrategy::table_sizes(&game)?;
    let mut stride = vec![1u64; n];
    for v in (0..n.saturating_sub(1)).rev() {
        stride[v] = stride[v + 1] * game.hatness[v + 1] as u64;
    }
    let nbrs: Vec<Vec<Vertex>> = (0..n).map(|v| game.graph.out_neighbors(v).collect()).collect();

    // Vertices with no guesses never cover anything and are not variables.
    let mut order: Vec<Vertex> = (0..n).filter(|&v| game.guesses[v] > 0).collect();
    order.sort_by_key(|&v| (sizes[v], v));
    if order.is_empty() {
        return Ok(report(Decision::Losing, 0));
    }
    let mut var_base = vec![usize::MAX; n];
    let mut vars = Vec::new();
    for &v in &order {
        var_base[v] = vars.len();
        vars.extend((0..sizes[v]).map(|view| (v, view)));
    }
    let mut search = Search {
        game: &game,
        stride,
        nbrs,
        vars,
        var_base,
        group_start: Vec::new(),
        groups: Vec::new(),
        assigned: Vec::new(),
        covered: vec![0; placements],
        remaining: vec![order.len() as u32; placements],
        forced: Vec::new(),
        forced_start: Vec::new(),
        forced_distinct: Vec::new(),
    };
    // Bucket placements by variable.
    let nv = search.vars.len();
    let mut counts = vec![0usize; nv + 1];
    for p in 0..placements as u32 {
        for &v in &order {
            counts[search.var_base[v] + search.view(p, v) + 1] += 1;
        }
    }
    for x in 0..nv {
        counts[x + 1] += counts[x];
    }
    let mut fill = counts.clone();
    let mut groups = vec![0u32; counts[nv]];
    for p in 0..placements as u32 {
        for &v in &order {
            let x = search.var_base[v] + search.view(p, v);
            groups[fill[x]] = p;
            fill[x] += 1;
        }
    }
    search.group_start = counts;
    search.groups = groups;
    search.assigned = vec![false; nv];
    let mut at = 0;
    for &(v, _) in &search.vars {
        search.forced_start.push(at);
        at += game.hatness[v] as usize;
    }
    search.forced = vec![0; at];
    search.forced_distinct = vec![0; nv];
    // With a single guessing vertex every placement starts out forced.
    if order.len() == 1 {
        let v = order[0];
        for p in 0..placements as u32 {
            let x = search.var_base[v] + search.view(p, v);
            let slot = search.forced_start[x] + search.color(p, v) as usize;
            search.forced[slot] += 1;
            if search.forced[slot] == 1 {
                search.forced_distinct[x] += 1;
                if search.forced_distinct[x] > game.guesses[v] {
                    return Ok(report(Decision::Losing, 0));
                }
            }
        }
    }

    let mut frames: Vec<Frame> = Vec::with_capacity(nv);
    let mut nodes = 0u64;
    while let Some(x) = search.pick() {
        frames.push(Frame { var: x, candidates: search.candidates(x), next: 0, applied: None });
        // Advance the deepest frame until an assignment survives, popping
        // exhausted frames.
        loop {
            let Some(top) = frames.last_mut() else { return Ok(report(Decision::Losing, nodes)) };
            let x = top.var;
            if let Some(mask) = top.applied.take() {
                search.undo(x, mask);
            }
            if top.next >= top.candidates.len() {
                frames.pop();
                continue;
            }
            let mask = top.candidates[top.next];
            top.next += 1;
            top.applied = Some(mask);
            nodes += 1;
            if nodes > limits.node_budget {
                return Ok(report(Decision::Undecided, nodes));
            }
            if search.apply(x, mask) {
                break;
            }
        }
    }

    let mut tables: Vec<Vec<Vec<Color>>> = sizes.iter().map(|&s| vec![Vec::new(); s]).collect();
    for frame in &frames {
        let (v, view) = search.vars[frame.var];
        let mask = frame.applied.expect("assigned");
        tables[v][view] = (0..game.hatness[v]).filter(|&c| mask >> c & 1 == 1).collect();
    }
    let lookup = LookupStrategy { game: game.clone(), tables };
    Ok(report(Decision::Winning(lookup), nodes))
}
