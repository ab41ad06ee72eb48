//! Properly edge-colored regular graphs.
//!
//! Vertices and colors are dense integers; the names they were read with are
//! kept in side tables. Every vertex meets every color exactly once, so the
//! graph is stored as a neighbor table indexed by `(vertex, color)`.

mod factor;
pub(crate) mod format;
mod simple;

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use factor::{find_one_factorization, for_each_one_factorization};
pub use format::parse_graph;
pub use simple::SimpleGraph;

/// Hard cap on the number of colors, so a [`ColorSet`] is one machine word.
pub const MAX_COLORS: usize = 64;

/// A set of colors as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// All colors `0..r`.
    pub fn full(r: usize) -> Self {
        assert!(r <= MAX_COLORS);
        if r == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << r) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub fn single(c: usize) -> Self {
        ColorSet(1 << c)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: usize) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn with(self, c: usize) -> Self {
        ColorSet(self.0 | 1 << c)
    }

    pub fn without(self, c: usize) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_COLORS).filter(move |&c| bits >> c & 1 == 1)
    }

    /// Image under a permutation of the colors.
    pub fn map(self, perm: impl Fn(usize) -> usize) -> Self {
        self.iter().fold(ColorSet::EMPTY, |acc, c| acc.with(perm(c)))
    }

    /// Every subset of `0..r`, by increasing bitmask.
    pub fn all_subsets(r: usize) -> impl Iterator<Item = ColorSet> {
        assert!(r < MAX_COLORS, "subset enumeration needs r < 64");
        (0..1u64 << r).map(ColorSet)
    }
}

/// Sets are ordered by size first, then by bitmask.
impl Ord for ColorSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for ColorSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The partition of the vertices into `∼_C` classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Class index of every vertex; classes are numbered by minimum vertex.
    pub class_of: Vec<usize>,
    /// Minimum vertex of each class.
    pub reps: Vec<usize>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep_of(&self, v: usize) -> usize {
        self.reps[self.class_of[v]]
    }

    /// The classes as sorted vertex lists.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.reps.len()];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.len()];
        self.class_of.iter().zip(&coarser.class_of).all(|(&a, &b)| {
            if image[a] == usize::MAX {
                image[a] = b;
            }
            image[a] == b
        })
    }
}

/// A connected, `r`-regular, properly `r`-edge-colored simple graph.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    vertex_names: Vec<String>,
    color_names: Vec<String>,
    r: usize,
    /// `nbr[v * r + c]` is the neighbor of `v` along color `c`.
    nbr: Vec<usize>,
}

impl fmt::Debug for EdgeColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeColoredGraph")
            .field("vertices", &self.vertex_count())
            .field("colors", &self.color_names)
            .field("edges", &self.edges())
            .finish()
    }
}

impl EdgeColoredGraph {
    /// Builds a graph from colored edges `(u, v, color)` on vertices
    /// `0..vertex_names.len()` and colors `0..color_names.len()`, checking
    /// every invariant.
    pub fn from_edges(
        vertex_names: Vec<String>,
        color_names: Vec<String>,
        edges: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = vertex_names.len();
        let r = color_names.len();
        if r > MAX_COLORS {
            return Err(Error::TooManyColors { colors: r });
        }
        let mut seen = std::collections::HashSet::new();
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &(u, v, c) in edges {
            assert!(u < n && v < n && c < r, "edge ({u}, {v}, {c}) out of range");
            if u == v {
                return Err(Error::LoopEdge {
                    vertex: vertex_names[u].clone(),
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge {
                    u: vertex_names[u].clone(),
                    v: vertex_names[v].clone(),
                });
            }
            incident[u].push((c, v));
            incident[v].push((c, u));
        }
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() != r {
                return Err(Error::NotRegular {
                    vertex: vertex_names[v].clone(),
                    degree: inc.len(),
                    colors: r,
                });
            }
        }
        let mut nbr = vec![usize::MAX; n * r];
        for (v, inc) in incident.iter_mut().enumerate() {
            inc.sort();
            if inc.windows(2).any(|w| w[0].0 == w[1].0) {
                let colors: Vec<&str> = inc.iter().map(|&(c, _)| color_names[c].as_str()).collect();
                return Err(Error::NotProperlyColored {
                    vertex: vertex_names[v].clone(),
                    colors: colors.join(","),
                });
            }
            for &(c, w) in inc.iter() {
                nbr[v * r + c] = w;
            }
        }
        let g = EdgeColoredGraph {
            vertex_names,
            color_names,
            r,
            nbr,
        };
        let components = g.components_under(ColorSet::full(r)).len();
        if components > 1 {
            return Err(Error::NotConnected { components });
        }
        Ok(g)
    }

    /// Builds a graph from a neighbor table `table[v][c]`.
    pub fn from_neighbor_table(
        vertex_names: Vec<String>,
        color_names: Vec<String>,
        table: &[Vec<usize>],
    ) -> Result<Self> {
        let mut edges = Vec::new();
        for (v, row) in table.iter().enumerate() {
            if row.len() != color_names.len() {
                return Err(Error::NotRegular {
                    vertex: vertex_names[v].clone(),
                    degree: row.len(),
                    colors: color_names.len(),
                });
            }
            for (c, &w) in row.iter().enumerate() {
                if w >= table.len() || table[w].get(c) != Some(&v) {
                    return Err(Error::NotProperlyColored {
                        vertex: vertex_names[v].clone(),
                        colors: format!("{} (color {} is not an involution)", row.len(), color_names[c]),
                    });
                }
                if v <= w {
                    edges.push((v, w, c));
                }
            }
        }
        EdgeColoredGraph::from_edges(vertex_names, color_names, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    /// Number of colors, which is also the degree.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colors(&self) -> ColorSet {
        ColorSet::full(self.r)
    }

    #[inline]
    pub fn neighbor(&self, v: usize, c: usize) -> usize {
        self.nbr[v * self.r + c]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn color_name(&self, c: usize) -> &str {
        &self.color_names[c]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn color_by_name(&self, name: &str) -> Option<usize> {
        self.color_names.iter().position(|n| n == name)
    }

    /// Edges `(u, v, color)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.vertex_count() * self.r / 2);
        for u in 0..self.vertex_count() {
            for c in 0..self.r {
                let v = self.neighbor(u, c);
                if u < v {
                    out.push((u, v, c));
                }
            }
        }
        out.sort();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() * self.r / 2
    }

    /// Color of the edge `{u, v}`, if there is one.
    pub fn edge_color(&self, u: usize, v: usize) -> Option<usize> {
        (0..self.r).find(|&c| self.neighbor(u, c) == v)
    }

    /// The `∼_C` partition: components of the spanning subgraph on the edges
    /// with colors in `colors`.
    pub fn components_under(&self, colors: ColorSet) -> Partition {
        let n = self.vertex_count();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let palette: Vec<usize> = colors.iter().filter(|&c| c < self.r).collect();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(start);
            class_of[start] = id;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &c in &palette {
                    let w = self.neighbor(u, c);
                    if class_of[w] == usize::MAX {
                        class_of[w] = id;
                        queue.push_back(w);
                    }
                }
            }
        }
        Partition { class_of, reps }
    }

    /// Vertices of the `∼_C` class of `v`, sorted.
    pub fn class_of(&self, colors: ColorSet, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v] = true;
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            out.push(u);
            for c in colors.iter().filter(|&c| c < self.r) {
                let w = self.neighbor(u, c);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Length of the cycle through `v` alternating colors `i` and `j`.
    pub fn bicolored_cycle_len(&self, v: usize, i: usize, j: usize) -> usize {
        let mut len = 0;
        let mut u = v;
        loop {
            u = self.neighbor(u, i);
            u = self.neighbor(u, j);
            len += 2;
            if u == v {
                return len;
            }
        }
    }

    /// Connected components of the graph with color `b` removed, each as a
    /// properly colored `(r-1)`-regular graph with densely re-indexed colors.
    pub fn delete_color(&self, b: usize) -> Vec<Subgraph> {
        assert!(b < self.r, "color {b} out of range");
        let kept = self.colors().without(b);
        let color_map: Vec<usize> = kept.iter().collect();
        let partition = self.components_under(kept);
        partition
            .classes()
            .into_iter()
            .map(|vertices| {
                let mut local = vec![usize::MAX; self.vertex_count()];
                for (i, &v) in vertices.iter().enumerate() {
                    local[v] = i;
                }
                let table: Vec<Vec<usize>> = vertices
                    .iter()
                    .map(|&v| color_map.iter().map(|&c| local[self.neighbor(v, c)]).collect())
                    .collect();
                let graph = EdgeColoredGraph::from_neighbor_table(
                    vertices.iter().map(|&v| self.vertex_names[v].clone()).collect(),
                    color_map.iter().map(|&c| self.color_names[c].clone()).collect(),
                    &table,
                )
                .expect("component of a valid graph is valid");
                Subgraph {
                    graph,
                    vertex_map: vertices,
                    color_map: color_map.clone(),
                }
            })
            .collect()
    }

    /// Same graph with colors renamed through `color_perm` (`c` becomes
    /// `color_perm[c]`), keeping the names attached to the new indices.
    pub fn recolor(&self, color_perm: &[usize]) -> EdgeColoredGraph {
        let mut names = vec![String::new(); self.r];
        for (c, &d) in color_perm.iter().enumerate() {
            names[d] = self.color_names[c].clone();
        }
        let mut nbr = vec![0; self.nbr.len()];
        for v in 0..self.vertex_count() {
            for c in 0..self.r {
                nbr[v * self.r + color_perm[c]] = self.neighbor(v, c);
            }
        }
        EdgeColoredGraph {
            vertex_names: self.vertex_names.clone(),
            color_names: names,
            r: self.r,
            nbr,
        }
    }
}

/// A connected component of a graph with one color class removed.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: EdgeColoredGraph,
    /// Original vertex of each local vertex.
    pub vertex_map: Vec<usize>,
    /// Original color of each local color.
    pub color_map: Vec<usize>,
}

/// Default name for color `i`: `a`..`z`, then `c26`, `c27`, ...
pub fn default_color_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("c{i}")
    }
}
