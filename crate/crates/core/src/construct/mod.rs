//! Strategy builders. Each returns a [`Strategy`](crate::Strategy) whose
//! provenance records how it was composed.

mod clique;
mod hint;
mod join;
mod path;
mod petal;
mod reduce;
mod star;

pub use clique::clique_strategy;
pub use hint::{build_l_table, forget_hint, hint_extend, hint_window, LTable};
pub use join::{product_at_vertex, reduced_join, substitute, Arbitrator};
pub use path::{build_path, build_path_with_hint};
pub use petal::{build_petal, build_planar22, StarBackend};
pub use reduce::{permute, remove_half_edge, strong_vertex_attach, strong_vertex_remove};
pub use star::{scrap_heap, star_from_phf, star_scrapheap, MAX_STAR_LEAVES};
