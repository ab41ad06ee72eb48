//! Colorful polytopes.
//!
//! A connected `r`-regular graph whose edges are properly colored with `r`
//! colors determines an abstract polytope of rank `r`: its `j`-faces are the
//! pairs `(C, v)` of a `j`-set of colors `C` and a connected component of the
//! subgraph spanned by the edges with colors in `C`. This crate builds those
//! polytopes, computes their automorphism groups through the color-respecting
//! automorphisms of the graph, and implements the derived constructions:
//! Cayley-graph polytopes and graphicahedra, flag-adjacency polytopes, and
//! monodromy polytopes together with their covering maps. Rank-3 instances
//! can be classified as closed surfaces.
//!
//! Everything is exact and deterministic; the sizes of the expensive searches
//! are bounded by a [`Budget`].

pub mod autgroup;
pub mod cayley;
pub mod colorful;
pub mod ecgraph;
mod error;
pub mod flagpoly;
pub mod monodromy;
pub mod perm;
pub mod poset;
pub mod topology;

pub use error::{Error, Result};

/// Size limits for the constructions that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of faces a materialized poset may have.
    pub max_faces: usize,
    /// Maximum number of group elements that may be listed (also bounds
    /// Cayley graph vertex counts).
    pub max_group_order: usize,
    /// Largest number of colors for which all `r!` color permutations are
    /// searched.
    pub max_search_colors: usize,
    /// Face limit for the brute-force poset isomorphism searches.
    pub max_oracle_faces: usize,
    /// Maximum number of flags enumerated explicitly.
    pub max_flags: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_faces: 1_000_000,
            max_group_order: 100_000,
            max_search_colors: 10,
            max_oracle_faces: 10_000,
            max_flags: 2_000_000,
        }
    }
}
