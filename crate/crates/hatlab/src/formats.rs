//! JSON documents on disk. Every type is serialized through serde with a
//! single canonical form: pretty-printed, keys in declaration order, arcs
//! sorted, trailing newline.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest as _, Sha256};

/// A file read for a run, identified by its SHA-256.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digest {
    pub path: String,
    pub sha256: String,
}

impl Digest {
    pub fn of_bytes(path: impl Into<String>, bytes: &[u8]) -> Self {
        Digest { path: path.into(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

pub fn read_json_str<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).with_context(|| format!("parsing {what}"))
}

/// Reads and parses `path`, returning the value and the file's digest.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, Digest)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let value = read_json_str(text, &path.display().to_string())?;
    Ok((value, Digest::of_bytes(path.display().to_string(), &bytes)))
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, to_canonical_json(value)?).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hatlab_core::HatGame;

    #[test]
    fn game_doc_is_canonical() {
        let text = r#"{"vertices":3,"edges":[[1,2]],"arcs":[[0,1]],"h":[2,2,2],"g":[1,1,1]}"#;
        let g: HatGame = read_json_str(text, "game").unwrap();
        let once = to_canonical_json(&g).unwrap();
        let again: HatGame = read_json_str(&once, "game").unwrap();
        assert_eq!(g, again);
        assert_eq!(once, to_canonical_json(&again).unwrap());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"vertices":1,"h":[2],"g":[1],"colour":3}"#;
        assert!(read_json_str::<HatGame>(text, "game").is_err());
    }
}
