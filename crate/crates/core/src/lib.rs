//! Strategy synthesis and verification for hat guessing games.
//!
//! The crate is `no_std` with `alloc`: games, composable strategies, the
//! strategy constructors, the exhaustive and brute-force deciders, perfect
//! hash families and the losing-certificate calculus. File IO, parallel
//! verification and the command line live in the `hatlab` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cert;
pub mod construct;
pub mod doc;
pub mod error;
pub mod game;
pub mod phf;
pub mod ratio;
pub mod recipe;
pub mod scc;
pub mod solve;
pub mod strategy;
pub mod verify;

pub use error::{Error, Result};
pub use cert::{check_certificate, CertReport, LosingCertificate, Rule};
pub use construct::*;
pub use game::{induced_subgame, validate_game, Color, HatGame, HatPlacement, Hint, Vertex, VisibilityGraph};
pub use phf::{binary_separating, search_phf, verify_phf, PhfArray, PhfCheck, SearchOutcome};
pub use recipe::{InlineOnly, PhfResolver, PhfSource, Recipe, RecipeError, StarSource};
pub use ratio::{guess_ratio_sum, Fraction};
pub use scc::condensation;
pub use solve::{brute_force_decide, Decision, SolveLimits, SolveReport};
pub use strategy::{mask_check, Arena, Evaluator, GuessSet, Provenance, Strategy};
pub use verify::{verify_exhaustive, verify_hint_game, verify_sampled, Outcome, Verdict};
