use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Composition tree recording which constructor produced a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Param>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Provenance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl From<u32> for Param {
    fn from(x: u32) -> Self {
        Param::Int(x as i64)
    }
}

impl From<usize> for Param {
    fn from(x: usize) -> Self {
        Param::Int(x as i64)
    }
}

impl From<&[u32]> for Param {
    fn from(x: &[u32]) -> Self {
        Param::List(x.iter().map(|&v| v as i64).collect())
    }
}

impl From<&[usize]> for Param {
    fn from(x: &[usize]) -> Self {
        Param::List(x.iter().map(|&v| v as i64).collect())
    }
}

impl From<&str> for Param {
    fn from(x: &str) -> Self {
        Param::Text(x.into())
    }
}

impl Provenance {
    pub fn new(kind: &str) -> Self {
        Provenance { kind: kind.into(), params: BTreeMap::new(), children: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn child(mut self, child: &Provenance) -> Self {
        self.children.push(child.clone());
        self
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Provenance::size).sum::<usize>()
    }

    /// Whether some node has the given kind.
    pub fn contains_kind(&self, kind: &str) -> bool {
        self.kind == kind || self.children.iter().any(|c| c.contains_kind(kind))
    }
}
