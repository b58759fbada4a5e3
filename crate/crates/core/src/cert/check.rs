use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{glue_games, LosingCertificate, Rule};
use crate::game::{induced_subgame, validate_game, HatGame, VisibilityGraph};
use crate::ratio::{guess_ratio_sum, Fraction};
use crate::scc::quotient_is_acyclic;
use crate::solve::{brute_force_decide, Decision, SolveLimits};

/// First broken rule, located by child indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertViolation {
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertReport {
    pub valid: bool,
    pub violation: Option<CertViolation>,
    /// Brute-force leaves whose re-run did not finish within their budget
    /// and were accepted on trust.
    pub trusted: Vec<Vec<usize>>,
    pub nodes: usize,
}

/// Checks every node's side conditions and that its game is exactly what
/// the rule concludes from its children.
pub fn check_certificate(cert: &LosingCertificate) -> CertReport {
    let mut report = CertReport { valid: true, violation: None, trusted: Vec::new(), nodes: 0 };
    let mut path = Vec::new();
    if let Err(message) = check_node(cert, &mut path, &mut report) {
        report.valid = false;
        report.violation = Some(CertViolation { path, rule: message.0.into(), message: message.1 });
    }
    report
}

type Failure = (&'static str, String);

fn check_node(cert: &LosingCertificate, path: &mut Vec<usize>, report: &mut CertReport) -> Result<(), Failure> {
    report.nodes += 1;
    let rule = cert.rule.name();
    let fail = |m: String| -> Result<(), Failure> { Err((rule, m)) };
    let game = &cert.game;
    let violations = validate_game(game);
    if !violations.is_empty() {
        return fail(format!("invalid game: {}", crate::error::Error::InvalidGame(violations)));
    }
    if game.hint.is_some() {
        return fail("certificates cover games without hints".into());
    }
    let arity = match cert.rule {
        Rule::CliqueDeficit | Rule::BruteForced { .. } => 0,
        Rule::GlueAtVertex { .. } => 2,
        Rule::SccSplit { ref parts } => parts.len(),
        _ => 1,
    };
    if cert.children.len() != arity {
        return fail(format!("expected {arity} children, found {}", cert.children.len()));
    }
    for (i, child) in cert.children.iter().enumerate() {
        path.push(i);
        check_node(child, path, report)?;
        path.pop();
    }
    let kids: Vec<&HatGame> = cert.children.iter().map(|c| &c.game).collect();
    match &cert.rule {
        Rule::CliqueDeficit => {
            if !game.graph.is_complete() {
                return fail("graph is not complete".into());
            }
            let sum = guess_ratio_sum(&game.hatness, &game.guesses).map_err(|e| (rule, format!("{e}")))?;
            if sum >= Fraction::ONE {
                return fail(format!("guess ratios sum to {sum}, not below 1"));
            }
        }
        Rule::BruteForced { node_budget } => {
            let limits = SolveLimits { node_budget: *node_budget, ..SolveLimits::default() };
            match brute_force_decide(game, limits) {
                Ok(r) => match r.decision {
                    Decision::Losing => {}
                    Decision::Winning(_) => return fail("the solver found a winning strategy".into()),
                    Decision::Undecided => report.trusted.push(path.clone()),
                },
                Err(_) => report.trusted.push(path.clone()),
            }
        }
        Rule::GlueAtVertex { a1, a2 } => {
            let (g1, g2) = (kids[0], kids[1]);
            if *a1 >= g1.vertex_count() || *a2 >= g2.vertex_count() {
                return fail("glue vertex out of range".into());
            }
            let s = g2.guesses[*a2];
            if g1.guesses[*a1] != s {
                return fail(format!("guesses at the glued vertex differ: {} and {s}", g1.guesses[*a1]));
            }
            if g2.hatness[*a2] != s + 1 {
                return fail(format!(
                    "the second game's glued vertex must be strong: hatness {} but {s} guesses",
                    g2.hatness[*a2]
                ));
            }
            if g1.hatness[*a1] < s + 1 {
                return fail(format!("the first game's glued vertex has hatness {} below {}", g1.hatness[*a1], s + 1));
            }
            if glue_games(g1, *a1, g2, *a2) != *game {
                return fail("game differs from the glued children".into());
            }
        }
        Rule::AddHalfEdge { u, v } => {
            let child = kids[0];
            let (u, v) = (*u, *v);
            if u == v || u >= child.vertex_count() || v >= child.vertex_count() {
                return fail("arc endpoints invalid".into());
            }
            if child.graph.has_arc(u, v) {
                return fail(format!("child already has the arc {u} -> {v}"));
            }
            let mut expected = child.clone();
            expected.graph.add_arc(u, v);
            expected.guesses[u] = child.guesses[u] / child.hatness[v];
            if expected != *game {
                return fail(format!(
                    "game differs from the child plus {u} -> {v} with floor(g(u) / h(v)) = {} guesses at {u}",
                    expected.guesses[u]
                ));
            }
        }
        Rule::RemoveStrongVertex { a } => {
            let a = *a;
            let n = game.vertex_count();
            if a >= n {
                return fail("strong vertex out of range".into());
            }
            let s = game.guesses[a];
            if s == 0 || game.hatness[a] != s + 1 {
                return fail(format!("vertex {a} is not strong: hatness {}, {s} guesses", game.hatness[a]));
            }
            if let Some(w) = (0..n).find(|&w| w != a && !game.graph.adjacent(a, w)) {
                return fail(format!("vertex {a} is not adjacent to {w}"));
            }
            let rest: Vec<usize> = (0..n).filter(|&w| w != a).collect();
            if rest.is_empty() {
                return fail("no vertices left after removing the strong vertex".into());
            }
            let sub = induced_subgame(game, &rest).map_err(|e| (rule, format!("{e}")))?.game;
            let guesses = sub.guesses.iter().map(|&g| g * (s + 1)).collect();
            let expected = HatGame::new(sub.graph, sub.hatness, guesses);
            if expected != *kids[0] {
                return fail(format!("child is not the game without {a} with guesses multiplied by {}", s + 1));
            }
        }
        Rule::SccSplit { parts } => {
            let n = game.vertex_count();
            let mut part_of = alloc::vec![usize::MAX; n];
            for (i, part) in parts.iter().enumerate() {
                if part.is_empty() {
                    return fail(format!("part {i} is empty"));
                }
                for &v in part {
                    if v >= n || part_of[v] != usize::MAX {
                        return fail(format!("vertex {v} is out of range or in two parts"));
                    }
                    part_of[v] = i;
                }
            }
            if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
                return fail(format!("vertex {v} is in no part"));
            }
            if !quotient_is_acyclic(&game.graph, &part_of, parts.len()) {
                return fail("arcs between parts form a cycle".into());
            }
            for (i, part) in parts.iter().enumerate() {
                let sub = induced_subgame(game, part).map_err(|e| (rule, format!("{e}")))?.game;
                if sub != *kids[i] {
                    return fail(format!("child {i} is not the subgame on its part"));
                }
            }
        }
        Rule::PathStep => {
            let child = kids[0];
            let s = path_pattern(child).ok_or_else(|| (rule, String::from("child is not a path of the stepping shape")))?;
            let m = child.vertex_count() + 1;
            if path_pattern(game) != Some(s) || game.vertex_count() != m {
                return fail(format!("game is not the path on {m} vertices with 2s, 4s-1 colors and s = {s} guesses"));
            }
        }
        Rule::HatnessIncrease => {
            let child = kids[0];
            if child.graph != game.graph || child.guesses != game.guesses {
                return fail("graph or guesses differ from the child".into());
            }
            if let Some(v) = (0..game.vertex_count()).find(|&v| game.hatness[v] < child.hatness[v]) {
                return fail(format!("hatness at {v} decreases"));
            }
        }
    }
    Ok(())
}

/// `s` if `game` is a path with `2s` colors at vertex 0, `4s - 1` elsewhere
/// and `s` guesses everywhere.
fn path_pattern(game: &HatGame) -> Option<u32> {
    let n = game.vertex_count();
    let s = *game.guesses.first()?;
    let ok = s >= 1
        && game.graph == VisibilityGraph::path(n)
        && game.guesses.iter().all(|&g| g == s)
        && game.hatness[0] == 2 * s
        && game.hatness[1..].iter().all(|&h| h == 4 * s - 1);
    ok.then_some(s)
}
