//! The colorful polytope of a properly edge-colored regular graph.
//!
//! A face is a pair `(C, v)` of a color set and a vertex, identified with
//! every `(C, w)` for `w` reachable from `v` along edges with colors in `C`.
//! Faces are stored canonically with `v` the minimum vertex of its class.
//! The free functions below work on the graph alone; [`build_poset`]
//! materializes the whole polytope.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::ecgraph::{ColorSet, EdgeColoredGraph, Partition, Subgraph};
use crate::error::{Error, Result};
use crate::poset::{ChainFlag, RankedPoset};
use crate::Budget;

/// A face `(colors, rep)` with `rep` the minimum vertex of its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub colors: ColorSet,
    pub rep: usize,
}

impl Face {
    pub fn rank(&self) -> usize {
        self.colors.len()
    }
}

/// A flag `(vertex, order)`: its `j`-face is the first `j` colors of `order`
/// together with `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColorFlag {
    pub vertex: usize,
    pub order: Vec<usize>,
}

impl ColorFlag {
    /// The color set of its face of rank `j`.
    pub fn colors(&self, j: usize) -> ColorSet {
        self.order[..j].iter().fold(ColorSet::EMPTY, |s, &c| s.with(c))
    }
}

/// The canonical form of `(colors, v)`.
pub fn face(g: &EdgeColoredGraph, colors: ColorSet, v: usize) -> Face {
    let rep = g.class_of(colors, v)[0];
    Face { colors, rep }
}

/// The face order: `f1 <= f2` iff the colors nest and the representatives
/// are joined by a path in the colors of `f2`.
pub fn leq(g: &EdgeColoredGraph, f1: &Face, f2: &Face) -> bool {
    f1.colors.is_subset(f2.colors) && g.class_of(f2.colors, f1.rep).binary_search(&f2.rep).is_ok()
}

/// All flags, vertex by vertex, color orders in lexicographic order.
pub fn flag_set(g: &EdgeColoredGraph) -> impl Iterator<Item = ColorFlag> + '_ {
    let r = g.r();
    (0..g.vertex_count()).flat_map(move |v| {
        (0..r)
            .permutations(r)
            .map(move |order| ColorFlag { vertex: v, order })
    })
}

/// Number of flags, `|V| * r!`.
pub fn flag_count(g: &EdgeColoredGraph) -> u128 {
    (1..=g.r() as u128).product::<u128>() * g.vertex_count() as u128
}

/// The `j`-adjacent flag. For `j = 0` the vertex moves along the edge with
/// the first color of the order; for `j >= 1` the colors at (1-based)
/// positions `j` and `j + 1` are exchanged.
pub fn cflag_adjacent(g: &EdgeColoredGraph, f: &ColorFlag, j: usize) -> ColorFlag {
    assert!(j < g.r(), "adjacency index {j} out of range");
    let mut out = f.clone();
    if j == 0 {
        out.vertex = g.neighbor(f.vertex, f.order[0]);
    } else {
        out.order.swap(j - 1, j);
    }
    out
}

/// A facet: the face `(R \ {color}, min vertex of component)`.
#[derive(Debug, Clone)]
pub struct Facet {
    pub color: usize,
    pub face: Face,
    /// The component of the graph with `color` deleted; its own colorful
    /// polytope is the facet.
    pub component: Subgraph,
}

/// One facet per color and component of the graph with that color deleted,
/// ordered by color, then by representative.
pub fn facets(g: &EdgeColoredGraph) -> Vec<Facet> {
    let mut out = Vec::new();
    for b in 0..g.r() {
        for component in g.delete_color(b) {
            out.push(Facet {
                color: b,
                face: Face {
                    colors: g.colors().without(b),
                    rep: component.vertex_map[0],
                },
                component,
            });
        }
    }
    out
}

/// A 2-face, the cycle alternating two colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoFace {
    pub colors: (usize, usize),
    pub rep: usize,
    /// Number of edges, always even.
    pub size: usize,
}

/// Every 2-face, ordered by color pair, then representative.
pub fn two_faces(g: &EdgeColoredGraph) -> Vec<TwoFace> {
    let mut out = Vec::new();
    for i in 0..g.r() {
        for j in i + 1..g.r() {
            let p = g.components_under(ColorSet::single(i).with(j));
            for &rep in &p.reps {
                out.push(TwoFace {
                    colors: (i, j),
                    rep,
                    size: g.bicolored_cycle_len(rep, i, j),
                });
            }
        }
    }
    out
}

/// Whether the faces containing vertex `v` form the Boolean lattice of
/// color sets: `C -> (C, v)` is injective and `(C, v) <= (D, v)` exactly
/// when `C` is a subset of `D`.
pub fn vertex_figure_check(g: &EdgeColoredGraph, v: usize) -> bool {
    let r = g.r();
    if r >= 16 {
        return false;
    }
    let faces: Vec<Face> = ColorSet::all_subsets(r).map(|c| face(g, c, v)).collect();
    let bottom = Face { colors: ColorSet::EMPTY, rep: v };
    if faces.iter().any(|f| !leq(g, &bottom, f)) {
        return false;
    }
    let distinct = faces.iter().collect::<std::collections::HashSet<_>>().len();
    if distinct != faces.len() {
        return false;
    }
    faces.iter().all(|a| {
        faces
            .iter()
            .all(|b| leq(g, a, b) == a.colors.is_subset(b.colors))
    })
}

/// The materialized colorful polytope.
#[derive(Debug, Clone)]
pub struct ColorfulPolytope {
    pub poset: RankedPoset,
    /// `faces[id - 1]` is the face with poset id `id`; id 0 is the empty face.
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    partitions: HashMap<ColorSet, Partition>,
}

impl ColorfulPolytope {
    /// The face with poset id `id`, or `None` for the empty face.
    pub fn face(&self, id: usize) -> Option<Face> {
        id.checked_sub(1).map(|k| self.faces[k])
    }

    pub fn id_of(&self, f: &Face) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Poset id of the face `(colors, v)` for any vertex `v` of the class.
    pub fn face_id(&self, colors: ColorSet, v: usize) -> usize {
        let rep = self.partitions[&colors].rep_of(v);
        self.index[&Face { colors, rep }]
    }

    /// The `∼_C` partition for `colors`.
    pub fn partition(&self, colors: ColorSet) -> &Partition {
        &self.partitions[&colors]
    }

    /// The chain of faces of a color flag.
    pub fn chain_flag(&self, f: &ColorFlag) -> ChainFlag {
        let mut chain = vec![0];
        let mut colors = ColorSet::EMPTY;
        chain.push(self.face_id(colors, f.vertex));
        for &c in &f.order {
            colors = colors.with(c);
            chain.push(self.face_id(colors, f.vertex));
        }
        ChainFlag(chain)
    }

    /// The color flag of a chain of faces.
    pub fn color_flag(&self, flag: &ChainFlag) -> ColorFlag {
        let r = self.poset.rank();
        let vertex = self.face(flag.face(0)).expect("rank-0 face").rep;
        let order = (1..=r)
            .map(|j| {
                let upper = self.face(flag.face(j as isize)).unwrap().colors;
                let lower = self.face(flag.face(j as isize - 1)).unwrap().colors;
                ColorSet::from_bits(upper.bits() & !lower.bits()).iter().next().unwrap()
            })
            .collect();
        ColorFlag { vertex, order }
    }

    /// Whether the faces above the vertex `v`, as materialized in the poset,
    /// form a Boolean lattice on the colors.
    pub fn vertex_figure_is_simplex(&self, v: usize) -> bool {
        let start = self.face_id(ColorSet::EMPTY, v);
        let mut seen = HashMap::new();
        let mut stack = vec![start];
        seen.insert(start, ());
        while let Some(f) = stack.pop() {
            let colors = self.face(f).unwrap().colors;
            let up = self.poset.up(f);
            if up.len() != self.poset.rank() - colors.len() {
                return false;
            }
            for &u in up {
                let uc = self.face(u).unwrap().colors;
                if !colors.is_subset(uc) || uc.len() != colors.len() + 1 {
                    return false;
                }
                if seen.insert(u, ()).is_none() {
                    stack.push(u);
                }
            }
        }
        seen.len() == 1 << self.poset.rank()
    }
}

/// Materializes the colorful polytope. Faces of each rank are ordered by
/// color set (as a bitmask), then representative.
pub fn build_poset(g: &EdgeColoredGraph, budget: &Budget) -> Result<ColorfulPolytope> {
    let r = g.r();
    // every color set contributes at least one face
    if r >= 63 || (1u128 << r) > budget.max_faces as u128 {
        return Err(Error::scale("face count", 1u128 << r.min(127), budget.max_faces as u128));
    }
    let by_rank: Vec<Vec<ColorSet>> = (0..=r)
        .map(|j| ColorSet::all_subsets(r).filter(|c| c.len() == j).collect())
        .collect();
    let partitions: HashMap<ColorSet, Partition> = ColorSet::all_subsets(r)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|c| (c, g.components_under(c)))
        .collect();
    let total: usize = partitions.values().map(Partition::len).sum();
    if total + 1 > budget.max_faces {
        return Err(Error::scale("face count", (total + 1) as u128, budget.max_faces as u128));
    }

    let mut faces = Vec::with_capacity(total);
    let mut index = HashMap::with_capacity(total);
    // index within its rank of the first face of each color set
    let mut first: HashMap<ColorSet, usize> = HashMap::new();
    for sets in &by_rank {
        let mut k = 0;
        for &c in sets {
            first.insert(c, k);
            for &rep in &partitions[&c].reps {
                let f = Face { colors: c, rep };
                index.insert(f, faces.len() + 1);
                faces.push(f);
            }
            k += partitions[&c].len();
        }
    }

    let mut levels: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    levels.push(vec![vec![0]; g.vertex_count()]);
    for sets in by_rank.iter().skip(1) {
        let level: Vec<Vec<usize>> = sets
            .par_iter()
            .flat_map_iter(|&c| {
                let part = &partitions[&c];
                let mut covers: Vec<Vec<usize>> = vec![Vec::new(); part.len()];
                for b in c.iter() {
                    let lower = c.without(b);
                    let lp = &partitions[&lower];
                    let base = first[&lower];
                    for v in 0..g.vertex_count() {
                        covers[part.class_of[v]].push(base + lp.class_of[v]);
                    }
                }
                for cov in &mut covers {
                    cov.sort_unstable();
                    cov.dedup();
                }
                covers
            })
            .collect();
        levels.push(level);
    }
    let poset = RankedPoset::from_levels(r, levels)?;
    Ok(ColorfulPolytope {
        poset,
        faces,
        index,
        partitions,
    })
}
