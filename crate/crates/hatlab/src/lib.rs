//! File formats, bundled data, parallel verification and the `hatlab`
//! command line on top of [`hatlab_core`].

pub mod bundled;
pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;

pub use hatlab_core;

pub use bundled::{bundled_phf, FileResolver, BUNDLED_PHF_NAMES};
pub use formats::{read_json, read_json_str, to_canonical_json, write_json, Digest};
pub use parallel::{verify_exhaustive_par, verify_sampled_par, Parallelism};
pub use report::RunReport;
