//! Data shipped with the tools and the file-aware PHF resolver.

use std::path::{Path, PathBuf};

use hatlab_core::error::{Error, Result};
use hatlab_core::recipe::resolve_closed_form;
use hatlab_core::{PhfArray, PhfResolver, PhfSource, StarBackend};

/// A 9 x 27 ternary array with every 3 columns separated by some row.
const PHF_9_27_3_3: &str = include_str!("../../../data/phf-9-27-3-3.json");

pub const BUNDLED_PHF_NAMES: &[&str] = &["phf-9-27-3-3"];

pub fn bundled_phf(name: &str) -> Option<PhfArray> {
    let text = match name.trim_end_matches(".json") {
        "phf-9-27-3-3" => PHF_9_27_3_3,
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("bundled PHF parses"))
}

/// Resolves file sources relative to `base`, bundled names, and the closed
/// forms. Petals with two guesses default to the bundled ternary array.
#[derive(Debug, Clone, Default)]
pub struct FileResolver {
    pub base: PathBuf,
}

impl FileResolver {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        FileResolver { base: base.into() }
    }

    pub fn for_file(recipe: &Path) -> Self {
        Self::new(recipe.parent().unwrap_or(Path::new(".")))
    }
}

impl PhfResolver for FileResolver {
    fn resolve(&self, source: &PhfSource) -> Result<PhfArray> {
        if let Some(r) = resolve_closed_form(source) {
            return r;
        }
        match source {
            PhfSource::Bundled(name) => {
                bundled_phf(name).ok_or_else(|| Error::Precondition(format!("no bundled PHF named {name:?}")))
            }
            PhfSource::File(rel) => {
                let path = self.base.join(rel);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Precondition(format!("reading {}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Precondition(format!("parsing {}: {e}", path.display())))
            }
            _ => unreachable!("closed forms handled above"),
        }
    }

    fn default_star(&self, s: u32) -> Result<StarBackend> {
        match s {
            2 => Ok(StarBackend::Phf(bundled_phf("phf-9-27-3-3").expect("bundled"))),
            _ => StarBackend::default_for(s)
                .ok_or_else(|| Error::Refused(format!("no default PHF for s = {s}; name a star backend"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hatlab_core::{verify_phf, PhfCheck};

    #[test]
    fn bundled_array_is_a_phf() {
        let a = bundled_phf("phf-9-27-3-3").unwrap();
        assert_eq!((a.row_count(), a.column_count(), a.v, a.t), (9, 27, 3, 3));
        assert_eq!(verify_phf(&a).unwrap(), PhfCheck::Valid);
        assert!(bundled_phf("nope").is_none());
    }
}
