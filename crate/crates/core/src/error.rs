use alloc::string::String;
use alloc::vec::Vec;

use crate::game::{Vertex, Violation};

/// Errors raised while constructing or evaluating games and strategies.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid game: {}", format_violations(.0))]
    InvalidGame(Vec<Violation>),
    #[error("vertex {vertex} out of range for a game on {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("placement does not fit the game: {0}")]
    BadPlacement(String),
    #[error("strategy bug at vertex {vertex}: {reason}")]
    StrategyBug { vertex: Vertex, reason: String },
    #[error("color {color} out of range [0, {bound})")]
    ColorOutOfRange { color: u64, bound: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("budget exceeded: {} placements required, budget {budget}", fmt_required(.required))]
    BudgetExceeded { required: Option<u128>, budget: u128 },
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

fn format_violations(v: &[Violation]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        let _ = write!(out, "{x}");
    }
    out
}

fn fmt_required(r: &Option<u128>) -> String {
    match r {
        Some(n) => alloc::format!("{n}"),
        None => "more than 2^128".into(),
    }
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
