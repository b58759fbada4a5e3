use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{Arena, Evaluator, GuessSet, Provenance, Strategy};
use crate::error::{precondition, Error, Result};
use crate::game::{Color, HatGame, Vertex};

/// Explicit per-vertex guess tables.
///
/// `tables[v][i]` is the guess list of `v` when its out-neighbors (ascending)
/// show the colors whose mixed-radix rank is `i`, first neighbor most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LookupStrategy {
    pub game: HatGame,
    pub tables: Vec<Vec<Vec<Color>>>,
}

#[derive(Debug)]
struct LookupEval {
    views: Vec<Vec<(Vertex, u32)>>,
    tables: Vec<Vec<GuessSet>>,
}

impl Evaluator for LookupEval {
    fn evaluate(&self, colors: &[Color], _hint: Option<Color>, out: &mut [GuessSet], _arena: &mut Arena) {
        for (v, slot) in out.iter_mut().enumerate() {
            let idx = self.views[v].iter().fold(0usize, |acc, &(w, h)| acc * h as usize + colors[w] as usize);
            slot.assign(&self.tables[v][idx]);
        }
    }
}

impl LookupStrategy {
    /// Table size of every vertex: the product of its out-neighbors' hatnesses.
    pub fn table_sizes(game: &HatGame) -> Result<Vec<usize>> {
        (0..game.vertex_count())
            .map(|v| {
                game.graph.out_neighbors(v).try_fold(1usize, |acc, w| {
                    acc.checked_mul(game.hatness[w] as usize).ok_or(Error::Overflow("lookup table size"))
                })
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let game = self.game.clone().checked()?;
        if game.hint.is_some() {
            return Err(Error::Unsupported("lookup strategies for hint games".into()));
        }
        let sizes = Self::table_sizes(&game)?;
        if self.tables.len() != sizes.len() {
            return Err(precondition(format!("{} tables for {} vertices", self.tables.len(), sizes.len())));
        }
        for (v, (table, &size)) in self.tables.iter().zip(&sizes).enumerate() {
            if table.len() != size {
                return Err(precondition(format!("table of vertex {v} has {} entries, expected {size}", table.len())));
            }
            for entry in table {
                if entry.len() > game.guesses[v] as usize {
                    return Err(Error::StrategyBug { vertex: v, reason: "table entry exceeds guess budget".into() });
                }
                if entry.windows(2).any(|w| w[0] >= w[1]) || entry.iter().any(|&c| c >= game.hatness[v]) {
                    return Err(Error::StrategyBug { vertex: v, reason: "malformed table entry".into() });
                }
            }
        }
        Ok(())
    }

    pub fn into_strategy(self) -> Result<Strategy> {
        self.validate()?;
        let game = self.game;
        let views = (0..game.vertex_count())
            .map(|v| game.graph.out_neighbors(v).map(|w| (w, game.hatness[w])).collect())
            .collect();
        let tables = self
            .tables
            .into_iter()
            .map(|t| t.into_iter().map(GuessSet::from_colors).collect())
            .collect();
        let prov = Provenance::new("literal_lookup").param("vertices", game.vertex_count());
        Strategy::new(game, LookupEval { views, tables }, prov)
    }
}
