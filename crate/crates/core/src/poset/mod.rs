//! Explicit ranked posets: the representation every construction can be
//! materialized into and checked against.
//!
//! Faces carry global ids `0..face_count()`, grouped by rank from `-1` up to
//! `n` and sorted by index within a rank, so the unique minimal face is id 0.

mod format;
mod iso;
mod validate;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use format::parse_polytope;
pub use iso::{dualities, isomorphisms, poset_automorphisms, AutomorphismSearch};
pub use validate::{validate_polytope, Axiom, AxiomFailure, ValidationReport};

/// A flag: one face id per rank `-1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainFlag(pub Vec<usize>);

impl ChainFlag {
    /// Face of rank `rank` (which may be -1).
    pub fn face(&self, rank: isize) -> usize {
        self.0[(rank + 1) as usize]
    }
}

/// A finite ranked poset with explicit cover relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPoset {
    n: usize,
    /// `offsets[k]` is the first id of rank `k - 1`; one extra entry at the end.
    offsets: Vec<usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl RankedPoset {
    /// Builds a poset of rank `n` from its levels: `levels[k]` lists the
    /// faces of rank `k - 1`, each as the sorted indices (within rank `k - 2`)
    /// of the faces it covers. `levels[0]` must hold the single minimal face.
    pub fn from_levels(n: usize, levels: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if levels.len() != n + 2 {
            return Err(Error::MalformedPolytope(format!(
                "rank {n} needs {} levels, got {}",
                n + 2,
                levels.len()
            )));
        }
        if levels[0].len() != 1 || !levels[0][0].is_empty() {
            return Err(Error::MalformedPolytope(
                "rank -1 must hold exactly one face covering nothing".into(),
            ));
        }
        let mut offsets = vec![0usize];
        for lvl in &levels {
            offsets.push(offsets.last().unwrap() + lvl.len());
        }
        let total = *offsets.last().unwrap();
        let mut down = Vec::with_capacity(total);
        for (k, lvl) in levels.iter().enumerate() {
            for (i, covers) in lvl.iter().enumerate() {
                let mut ids = Vec::with_capacity(covers.len());
                for &c in covers {
                    if k == 0 || c >= levels[k - 1].len() {
                        return Err(Error::MalformedPolytope(format!(
                            "face {i} of rank {} covers missing face {c} of rank {}",
                            k as isize - 1,
                            k as isize - 2
                        )));
                    }
                    ids.push(offsets[k - 1] + c);
                }
                ids.sort_unstable();
                if ids.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::MalformedPolytope(format!(
                        "face {i} of rank {} lists a covered face twice",
                        k as isize - 1
                    )));
                }
                down.push(ids);
            }
        }
        let mut up = vec![Vec::new(); total];
        for (f, ds) in down.iter().enumerate() {
            for &d in ds {
                up[d].push(f);
            }
        }
        Ok(RankedPoset { n, offsets, down, up })
    }

    /// Rank-3 poset from a polyhedron given by its vertex count and its
    /// 2-faces as cyclic vertex lists. Edges are the consecutive pairs.
    pub fn from_polyhedron(vertex_count: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for face in faces {
            for k in 0..face.len() {
                let (a, b) = (face[k], face[(k + 1) % face.len()]);
                let e = (a.min(b), a.max(b));
                if let std::collections::hash_map::Entry::Vacant(slot) = edge_ids.entry(e) {
                    slot.insert(edges.len());
                    edges.push(e);
                }
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| edges[i]);
        let mut rank_of_edge = vec![0; edges.len()];
        for (pos, &i) in order.iter().enumerate() {
            rank_of_edge[i] = pos;
        }
        let level_edges: Vec<Vec<usize>> = order.iter().map(|&i| vec![edges[i].0, edges[i].1]).collect();
        let level_faces: Vec<Vec<usize>> = faces
            .iter()
            .map(|face| {
                let mut es: Vec<usize> = (0..face.len())
                    .map(|k| {
                        let (a, b) = (face[k], face[(k + 1) % face.len()]);
                        rank_of_edge[edge_ids[&(a.min(b), a.max(b))]]
                    })
                    .collect();
                es.sort_unstable();
                es.dedup();
                es
            })
            .collect();
        let levels = vec![
            vec![vec![]],
            vec![vec![0]; vertex_count],
            level_edges,
            level_faces,
            vec![(0..faces.len()).collect()],
        ];
        RankedPoset::from_levels(3, levels)
    }

    /// The `p`-gon `{p}` (for `p >= 2`).
    pub fn polygon(p: usize) -> Self {
        assert!(p >= 2);
        let edges: Vec<Vec<usize>> = (0..p)
            .map(|i| {
                let mut e = vec![i, (i + 1) % p];
                e.sort_unstable();
                e
            })
            .collect();
        RankedPoset::from_levels(
            2,
            vec![vec![vec![]], vec![vec![0]; p], edges, vec![(0..p).collect()]],
        )
        .expect("polygon is well formed")
    }

    /// The segment, the unique polytope of rank 1.
    pub fn segment() -> Self {
        RankedPoset::from_levels(1, vec![vec![vec![]], vec![vec![0]; 2], vec![vec![0, 1]]])
            .expect("segment is well formed")
    }

    /// Rank `n`.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn face_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Ids of the faces of rank `rank` (`-1..=n`).
    pub fn faces_of_rank(&self, rank: isize) -> std::ops::Range<usize> {
        let k = (rank + 1) as usize;
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn count_of_rank(&self, rank: isize) -> usize {
        self.faces_of_rank(rank).len()
    }

    pub fn rank_of(&self, face: usize) -> isize {
        let k = self.offsets.partition_point(|&o| o <= face) - 1;
        k as isize - 1
    }

    /// Index of `face` within its rank.
    pub fn index_in_rank(&self, face: usize) -> usize {
        face - self.offsets[(self.rank_of(face) + 1) as usize]
    }

    /// Id of the face with the given rank and index within the rank.
    pub fn face_id(&self, rank: isize, index: usize) -> usize {
        self.faces_of_rank(rank).start + index
    }

    /// Faces covered by `face`, sorted.
    pub fn down(&self, face: usize) -> &[usize] {
        &self.down[face]
    }

    /// Faces covering `face`, sorted.
    pub fn up(&self, face: usize) -> &[usize] {
        &self.up[face]
    }

    pub fn minimum(&self) -> usize {
        0
    }

    /// Number of faces of each rank `0..=n`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.n as isize).map(|r| self.count_of_rank(r)).collect()
    }

    /// Whether `a <= b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.rank_of(a), self.rank_of(b));
        if ra > rb {
            return false;
        }
        if ra == rb {
            return a == b;
        }
        let mut frontier = vec![b];
        for _ in 0..(rb - ra) {
            let mut next: Vec<usize> = frontier.iter().flat_map(|&f| self.down[f].iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        frontier.binary_search(&a).is_ok()
    }

    /// Faces `h` with `lower < h < upper` of rank one above `lower`, where
    /// `upper` has rank two above `lower`.
    pub fn middle_faces(&self, lower: usize, upper: usize) -> Vec<usize> {
        self.up[lower]
            .iter()
            .copied()
            .filter(|h| self.down[upper].binary_search(h).is_ok())
            .collect()
    }

    /// All flags, in lexicographic order of their face ids.
    pub fn flags(&self) -> Vec<ChainFlag> {
        let mut out = Vec::new();
        let mut chain = vec![0usize];
        self.extend_chains(&mut chain, self.n as isize, &mut |c| out.push(ChainFlag(c.to_vec())));
        out
    }

    pub(crate) fn extend_chains(&self, chain: &mut Vec<usize>, top_rank: isize, emit: &mut impl FnMut(&[usize])) {
        let last = *chain.last().unwrap();
        if self.rank_of(last) == top_rank {
            emit(chain);
            return;
        }
        for &next in &self.up[last] {
            chain.push(next);
            self.extend_chains(chain, top_rank, emit);
            chain.pop();
        }
    }

    /// Number of flags, counted without listing them.
    pub fn flag_count(&self) -> u128 {
        let mut ways = vec![0u128; self.face_count()];
        ways[0] = 1;
        for f in 1..self.face_count() {
            ways[f] = self.down[f].iter().map(|&d| ways[d]).sum();
        }
        self.faces_of_rank(self.n as isize).map(|f| ways[f]).sum()
    }

    /// The flag differing from `flag` exactly in its face of rank `i`.
    pub fn flag_adjacent(&self, flag: &ChainFlag, i: usize) -> Result<ChainFlag> {
        assert!(i < self.n, "adjacency rank {i} out of range");
        let lower = flag.0[i];
        let upper = flag.0[i + 2];
        let current = flag.0[i + 1];
        let others: Vec<usize> = self
            .middle_faces(lower, upper)
            .into_iter()
            .filter(|&h| h != current)
            .collect();
        if others.len() != 1 {
            return Err(Error::NotAPolytope(format!(
                "flag has {} faces {i}-adjacent to it, expected 1",
                others.len()
            )));
        }
        let mut out = flag.clone();
        out.0[i + 1] = others[0];
        Ok(out)
    }

    /// The dual poset: ranks reversed, the face of rank `j` with index `k`
    /// becoming the face of rank `n - 1 - j` with index `k`.
    pub fn dual(&self) -> RankedPoset {
        let n = self.n;
        let levels: Vec<Vec<Vec<usize>>> = (0..n + 2)
            .map(|k| {
                // dual level k holds the faces of original level n + 1 - k
                let orig = n + 1 - k;
                let range = self.offsets[orig]..self.offsets[orig + 1];
                range
                    .map(|f| {
                        if k == 0 {
                            Vec::new()
                        } else {
                            let base = self.offsets[orig + 1];
                            self.up[f].iter().map(|&u| u - base).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        RankedPoset::from_levels(n, levels).expect("dual of a well formed poset is well formed")
    }

    /// Id in the dual poset of the face `face` of this poset.
    pub fn dual_id(&self, face: usize) -> usize {
        let rank = self.rank_of(face);
        let idx = self.index_in_rank(face);
        let dual_rank = self.n as isize - 1 - rank;
        // offsets of the dual are the reversed level sizes
        let mut start = 0;
        for r in -1..dual_rank {
            start += self.count_of_rank(self.n as isize - 1 - r);
        }
        start + idx
    }

    /// The `(i, i+1)` face layer graph: the incidence bipartite graph between
    /// faces of ranks `i` and `i + 1`.
    pub fn face_layer_graph(&self, i: usize) -> LayerGraph {
        let lower: Vec<usize> = self.faces_of_rank(i as isize).collect();
        let upper: Vec<usize> = self.faces_of_rank(i as isize + 1).collect();
        let base = lower.first().copied().unwrap_or(0);
        let ubase = upper.first().copied().unwrap_or(0);
        let edges = upper
            .iter()
            .flat_map(|&u| self.down[u].iter().map(move |&d| (d - base, u - ubase)))
            .collect::<Vec<_>>();
        let mut edges = edges;
        edges.sort_unstable();
        LayerGraph {
            lower: lower.len(),
            upper: upper.len(),
            edges,
        }
    }

    /// Whether the given face bijection (indexed by face id) preserves ranks
    /// and covers in both directions.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        self.is_isomorphism_onto(self, map)
    }

    /// Whether `map` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism_onto(&self, other: &RankedPoset, map: &[usize]) -> bool {
        if map.len() != self.face_count() || other.face_count() != self.face_count() || self.n != other.n {
            return false;
        }
        let mut seen = vec![false; map.len()];
        for (f, &g) in map.iter().enumerate() {
            if g >= map.len() || seen[g] || self.rank_of(f) != other.rank_of(g) {
                return false;
            }
            seen[g] = true;
        }
        (0..self.face_count()).all(|f| {
            let mut img: Vec<usize> = self.down[f].iter().map(|&d| map[d]).collect();
            img.sort_unstable();
            img == other.down[map[f]]
        })
    }

    /// Whether `map` reverses the order of this poset.
    pub fn is_duality(&self, map: &[usize]) -> bool {
        let dual = self.dual();
        let into_dual: Vec<usize> = map.iter().map(|&g| self.dual_id(g)).collect();
        self.is_isomorphism_onto(&dual, &into_dual)
    }
}

/// A bipartite incidence graph between two consecutive ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerGraph {
    pub lower: usize,
    pub upper: usize,
    /// Incidences `(lower index, upper index)`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl LayerGraph {
    pub fn is_complete_bipartite(&self) -> bool {
        self.edges.len() == self.lower * self.upper
    }
}

/// Flags of a poset together with the adjacency permutations on them.
#[derive(Debug, Clone)]
pub struct FlagSystem {
    pub flags: Vec<ChainFlag>,
    /// `adjacent[i][f]` is the index of the `i`-adjacent flag of flag `f`.
    pub adjacent: Vec<Vec<usize>>,
    index: HashMap<ChainFlag, usize>,
}

impl FlagSystem {
    pub fn new(p: &RankedPoset, max_flags: usize) -> Result<Self> {
        let count = p.flag_count();
        if count > max_flags as u128 {
            return Err(Error::scale("flag count", count, max_flags as u128));
        }
        let flags = p.flags();
        let index: HashMap<ChainFlag, usize> = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut adjacent = Vec::with_capacity(p.rank());
        for i in 0..p.rank() {
            let row = flags
                .iter()
                .map(|f| Ok(index[&p.flag_adjacent(f, i)?]))
                .collect::<Result<Vec<usize>>>()?;
            adjacent.push(row);
        }
        Ok(FlagSystem { flags, adjacent, index })
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn index_of(&self, flag: &ChainFlag) -> Option<usize> {
        self.index.get(flag).copied()
    }
}
