//! Recipes: serializable composition trees that rebuild a strategy.
//!
//! A recipe is the portable form of a constructed strategy. Building it runs
//! the same constructors in the same order, so two builds of one recipe give
//! identical games and guess functions. PHF arrays may live in separate
//! files; resolving them is left to a [`PhfResolver`].

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::{self, Arbitrator, StarBackend};
use crate::error::{Error, Result};
use crate::game::Vertex;
use crate::phf::{binary_separating, PhfArray};
use crate::strategy::{LookupStrategy, Strategy};

/// Where a PHF array comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhfSource {
    Inline(PhfArray),
    /// Path of a PHF document, relative to the recipe file.
    File(String),
    /// Name of an array shipped with the tools.
    Bundled(String),
    /// The closed-form binary family with this many columns.
    BinarySeparating(usize),
}

/// Star backend named in a recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarSource {
    ScrapHeap,
    Phf(PhfSource),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum StrongOp {
    Remove { a: Vertex },
    Attach { s: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Clique {
        h: Vec<u32>,
        g: Vec<u32>,
    },
    Product {
        first: Box<Recipe>,
        v: Vertex,
        second: Box<Recipe>,
        z: Vertex,
    },
    ReducedJoin {
        base: Box<Recipe>,
        arbitrator: Arbitrator,
        host: Box<Recipe>,
        z: Vertex,
        #[serde(default)]
        divisors: Vec<(Vertex, u32)>,
    },
    Substitute {
        inner: Box<Recipe>,
        host: Box<Recipe>,
        z: Vertex,
        s: u32,
    },
    HalfEdgeRemoval {
        of: Box<Recipe>,
        u: Vertex,
        v: Vertex,
    },
    StrongVertex {
        of: Box<Recipe>,
        #[serde(flatten)]
        op: StrongOp,
    },
    HintWindow {
        h: u32,
        g: u32,
        w: u32,
    },
    HintExtend {
        inner: Box<Recipe>,
        h_a: u32,
        g_a: u32,
        w_a: u32,
    },
    ForgetHint {
        inner: Box<Recipe>,
    },
    Permute {
        inner: Box<Recipe>,
        order: Vec<Vertex>,
    },
    Path {
        s: u32,
        /// Build the hinted chain of this many vertices instead.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hint_k: Option<u32>,
    },
    StarScrapheap {
        s: u32,
        #[serde(rename = "H")]
        h: u32,
    },
    StarPhf {
        s: u32,
        phf: PhfSource,
    },
    Petal {
        s: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        star: Option<StarSource>,
    },
    Planar22 {
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        star: Option<StarSource>,
    },
    LiteralLookup(LookupStrategy),
}

/// Supplies PHF arrays that are not inline.
pub trait PhfResolver {
    fn resolve(&self, source: &PhfSource) -> Result<PhfArray>;

    /// Star used by petals when the recipe names none.
    fn default_star(&self, s: u32) -> Result<StarBackend> {
        StarBackend::default_for(s)
            .ok_or_else(|| Error::Refused(format!("no default PHF for s = {s}; name a star backend")))
    }
}

/// Resolver for self-contained recipes: inline and closed-form arrays only.
#[derive(Debug, Clone, Copy, Default)]
pub struct InlineOnly;

impl PhfResolver for InlineOnly {
    fn resolve(&self, source: &PhfSource) -> Result<PhfArray> {
        resolve_closed_form(source)
            .unwrap_or_else(|| Err(Error::Unsupported(format!("cannot load {source:?} without file access"))))
    }
}

/// Resolves the sources that need no IO.
pub fn resolve_closed_form(source: &PhfSource) -> Option<Result<PhfArray>> {
    match source {
        PhfSource::Inline(a) => Some(Ok(a.clone())),
        PhfSource::BinarySeparating(k) => Some(Ok(binary_separating(*k))),
        _ => None,
    }
}

/// A build failure and the field path of the recipe node that raised it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipeError {
    pub path: Vec<&'static str>,
    pub error: Error,
}

impl fmt::Display for RecipeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at recipe node root")?;
        for p in &self.path {
            write!(f, ".{p}")?;
        }
        write!(f, ": {}", self.error)
    }
}

impl core::error::Error for RecipeError {}

impl Recipe {
    pub fn kind(&self) -> &'static str {
        match self {
            Recipe::Clique { .. } => "clique",
            Recipe::Product { .. } => "product",
            Recipe::ReducedJoin { .. } => "reduced_join",
            Recipe::Substitute { .. } => "substitute",
            Recipe::HalfEdgeRemoval { .. } => "half_edge_removal",
            Recipe::StrongVertex { .. } => "strong_vertex",
            Recipe::HintWindow { .. } => "hint_window",
            Recipe::HintExtend { .. } => "hint_extend",
            Recipe::ForgetHint { .. } => "forget_hint",
            Recipe::Permute { .. } => "permute",
            Recipe::Path { .. } => "path",
            Recipe::StarScrapheap { .. } => "star_scrapheap",
            Recipe::StarPhf { .. } => "star_phf",
            Recipe::Petal { .. } => "petal",
            Recipe::Planar22 { .. } => "planar22",
            Recipe::LiteralLookup(_) => "literal_lookup",
        }
    }

    pub fn build(&self, resolver: &dyn PhfResolver) -> Result<Strategy, RecipeError> {
        let mut path = Vec::new();
        self.build_at(resolver, &mut path).map_err(|error| RecipeError { path, error })
    }

    fn build_at(&self, r: &dyn PhfResolver, path: &mut Vec<&'static str>) -> Result<Strategy> {
        fn sub(rec: &Recipe, name: &'static str, r: &dyn PhfResolver, path: &mut Vec<&'static str>) -> Result<Strategy> {
            path.push(name);
            let s = rec.build_at(r, path)?;
            path.pop();
            Ok(s)
        }
        let star = |src: &Option<StarSource>, s: u32| -> Result<StarBackend> {
            match src {
                None => r.default_star(s),
                Some(StarSource::ScrapHeap) => Ok(StarBackend::ScrapHeap),
                Some(StarSource::Phf(p)) => Ok(StarBackend::Phf(r.resolve(p)?)),
            }
        };
        match self {
            Recipe::Clique { h, g } => construct::clique_strategy(h, g),
            Recipe::Product { first, v, second, z } => {
                let a = sub(first, "first", r, path)?;
                let b = sub(second, "second", r, path)?;
                construct::product_at_vertex(&a, *v, &b, *z)
            }
            Recipe::ReducedJoin { base, arbitrator, host, z, divisors } => {
                let a = sub(base, "base", r, path)?;
                let b = sub(host, "host", r, path)?;
                construct::reduced_join(&a, arbitrator, &b, *z, divisors)
            }
            Recipe::Substitute { inner, host, z, s } => {
                let a = sub(inner, "inner", r, path)?;
                let b = sub(host, "host", r, path)?;
                construct::substitute(&a, &b, *z, *s)
            }
            Recipe::HalfEdgeRemoval { of, u, v } => {
                construct::remove_half_edge(&sub(of, "of", r, path)?, *u, *v)
            }
            Recipe::StrongVertex { of, op } => {
                let a = sub(of, "of", r, path)?;
                match op {
                    StrongOp::Remove { a: v } => construct::strong_vertex_remove(&a, *v),
                    StrongOp::Attach { s } => construct::strong_vertex_attach(&a, *s),
                }
            }
            Recipe::HintWindow { h, g, w } => construct::hint_window(*h, *g, *w),
            Recipe::HintExtend { inner, h_a, g_a, w_a } => {
                construct::hint_extend(&sub(inner, "inner", r, path)?, *h_a, *g_a, *w_a)
            }
            Recipe::ForgetHint { inner } => construct::forget_hint(&sub(inner, "inner", r, path)?),
            Recipe::Permute { inner, order } => construct::permute(&sub(inner, "inner", r, path)?, order),
            Recipe::Path { s, hint_k: None } => construct::build_path(*s),
            Recipe::Path { s, hint_k: Some(k) } => construct::build_path_with_hint(*s, *k),
            Recipe::StarScrapheap { s, h } => construct::star_scrapheap(*s, *h),
            Recipe::StarPhf { s, phf } => construct::star_from_phf(&r.resolve(phf)?, *s),
            Recipe::Petal { s, star: src } => construct::build_petal(*s, &star(src, *s)?),
            Recipe::Planar22 { k, star: src } => construct::build_planar22(*k, &star(src, 2)?),
            Recipe::LiteralLookup(l) => l.clone().into_strategy(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_exhaustive, Outcome};

    fn roundtrip(json: &str) -> Recipe {
        let r: Recipe = serde_json::from_str(json).unwrap();
        let back: Recipe = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(r, back);
        r
    }

    #[test]
    fn nested_product() {
        let r = roundtrip(
            r#"{"kind":"product","v":1,"z":0,
                "first":{"kind":"clique","h":[2,2],"g":[1,1]},
                "second":{"kind":"clique","h":[2,2],"g":[1,1]}}"#,
        );
        let s = r.build(&InlineOnly).unwrap();
        assert_eq!(s.game().hatness, [2, 4, 2]);
        assert_eq!(verify_exhaustive(&s, 100).unwrap().outcome, Outcome::WinningVerified);
    }

    #[test]
    fn error_path() {
        let r = roundtrip(
            r#"{"kind":"substitute","z":0,"s":2,
                "inner":{"kind":"path","s":1},
                "host":{"kind":"clique","h":[2,3],"g":[1,1]}}"#,
        );
        let e = r.build(&InlineOnly).unwrap_err();
        assert_eq!(e.path, ["host"]);
        assert!(alloc::format!("{e}").starts_with("at recipe node root.host: refused"));
    }

    #[test]
    fn strong_vertex_and_star_sources() {
        let r = roundtrip(
            r#"{"kind":"strong_vertex","op":"remove","a":0,
                "of":{"kind":"clique","h":[2,2],"g":[1,1]}}"#,
        );
        let s = r.build(&InlineOnly).unwrap();
        assert_eq!((s.game().vertex_count(), s.game().guesses[0]), (1, 2));
        let star = roundtrip(r#"{"kind":"star_phf","s":1,"phf":{"binary_separating":6}}"#);
        assert_eq!(star.build(&InlineOnly).unwrap().game().vertex_count(), 4);
        let p = roundtrip(r#"{"kind":"petal","s":1}"#).build(&InlineOnly).unwrap();
        assert_eq!(p.game().vertex_count(), 13);
        let e = roundtrip(r#"{"kind":"petal","s":2}"#).build(&InlineOnly).unwrap_err();
        assert!(matches!(e.error, Error::Refused(_)));
        let f = roundtrip(r#"{"kind":"star_phf","s":2,"phf":{"file":"x.json"}}"#).build(&InlineOnly).unwrap_err();
        assert!(matches!(f.error, Error::Unsupported(_)));
    }

    #[test]
    fn literal_lookup_roundtrip() {
        let r = roundtrip(
            r#"{"kind":"literal_lookup",
                "game":{"vertices":2,"edges":[[0,1]],"h":[2,2],"g":[1,1]},
                "tables":[[[0],[1]],[[1],[0]]]}"#,
        );
        let s = r.build(&InlineOnly).unwrap();
        assert_eq!(verify_exhaustive(&s, 100).unwrap().outcome, Outcome::WinningVerified);
    }
}
