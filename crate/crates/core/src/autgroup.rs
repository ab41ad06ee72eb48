//! Color-respecting automorphisms of edge-colored graphs.
//!
//! An automorphism that maps color classes to color classes is determined by
//! the image of one vertex and the permutation it induces on the colors, so
//! the group is enumerated by trying every pair `(w, π)` and extending along
//! edges. Lifting such an automorphism to faces, `(C, v) -> (π(C), γ(v))`,
//! gives every automorphism of the colorful polytope.

use std::ops::ControlFlow;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::colorful::{flag_count, ColorFlag, ColorfulPolytope};
use crate::ecgraph::EdgeColoredGraph;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup, UnionFind};
use crate::Budget;

/// A graph automorphism together with the permutation it induces on colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorRespectingAut {
    pub vertex_map: Perm,
    pub color_perm: Perm,
}

impl ColorRespectingAut {
    pub fn identity(vertices: usize, colors: usize) -> Self {
        ColorRespectingAut {
            vertex_map: Perm::identity(vertices),
            color_perm: Perm::identity(colors),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        ColorRespectingAut {
            vertex_map: self.vertex_map.compose(&other.vertex_map),
            color_perm: self.color_perm.compose(&other.color_perm),
        }
    }

    pub fn inverse(&self) -> Self {
        ColorRespectingAut {
            vertex_map: self.vertex_map.inverse(),
            color_perm: self.color_perm.inverse(),
        }
    }

    pub fn is_color_preserving(&self) -> bool {
        self.color_perm.is_identity()
    }

    /// Whether every edge of color `c` is mapped to an edge of color `π(c)`.
    pub fn respects(&self, g: &EdgeColoredGraph) -> bool {
        g.edges().into_iter().all(|(u, v, c)| {
            g.neighbor(self.vertex_map.apply(u), self.color_perm.apply(c)) == self.vertex_map.apply(v)
        })
    }

    /// Image of a flag: `(γ(v), π ∘ order)`.
    pub fn act_on_flag(&self, f: &ColorFlag) -> ColorFlag {
        ColorFlag {
            vertex: self.vertex_map.apply(f.vertex),
            order: f.order.iter().map(|&c| self.color_perm.apply(c)).collect(),
        }
    }
}

/// Table of bicolored cycle lengths `q[v][i][j]`, an invariant every
/// color-respecting automorphism must carry along.
fn cycle_table(g: &EdgeColoredGraph) -> Vec<u32> {
    let (n, r) = (g.vertex_count(), g.r());
    let mut q = vec![0u32; n * r * r];
    for v in 0..n {
        for i in 0..r {
            for j in i + 1..r {
                let len = g.bicolored_cycle_len(v, i, j) as u32;
                q[(v * r + i) * r + j] = len;
                q[(v * r + j) * r + i] = len;
            }
        }
    }
    q
}

/// Extends `0 -> w` with color permutation `pi` to a vertex map, or `None`
/// if the extension is inconsistent.
fn extend(g: &EdgeColoredGraph, w: usize, pi: &[usize]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = w;
    used[w] = true;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let u = queue[k];
        k += 1;
        let gu = map[u];
        for (c, &pc) in pi.iter().enumerate() {
            let x = g.neighbor(u, c);
            let y = g.neighbor(gu, pc);
            if map[x] == usize::MAX {
                if used[y] {
                    return None;
                }
                map[x] = y;
                used[y] = true;
                queue.push(x);
            } else if map[x] != y {
                return None;
            }
        }
    }
    Some(map)
}

/// The group `Γ_c(G)` of color-respecting automorphisms.
///
/// Elements are kept as their defining pairs `(image of vertex 0, color
/// permutation)` and re-extended on demand, so large graphs with large groups
/// stay cheap to hold.
#[derive(Debug, Clone)]
pub struct ColorRespectingGroup {
    graph: EdgeColoredGraph,
    /// Defining pairs, sorted by the image tuple of the vertex map.
    keys: Vec<(usize, Vec<usize>)>,
}

/// Enumerates `Γ_c(g)`. Fails with `ScaleExceeded` when `r` exceeds the
/// color-permutation budget.
pub fn color_respecting_group(g: &EdgeColoredGraph, budget: &Budget) -> Result<ColorRespectingGroup> {
    let r = g.r();
    if r > budget.max_search_colors {
        return Err(Error::scale("color count for permutation search", r as u128, budget.max_search_colors as u128));
    }
    let q = cycle_table(g);
    let perms: Vec<Vec<usize>> = (0..r).permutations(r).collect();
    let n = g.vertex_count();
    let keys: Vec<(usize, Vec<usize>)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|w| {
            let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            for pi in &perms {
                let invariant_ok = (0..r).all(|i| {
                    (i + 1..r).all(|j| q[i * r + j] == q[(w * r + pi[i]) * r + pi[j]])
                });
                if !invariant_ok {
                    continue;
                }
                if let Some(map) = extend(g, w, pi) {
                    found.push((map, pi.clone()));
                }
            }
            found.sort();
            found.into_iter().map(move |(_, pi)| (w, pi))
        })
        .collect();
    debug_assert!(
        keys.iter().filter(|(w, pi)| *w == 0 && pi.iter().enumerate().all(|(i, &x)| i == x)).count() == 1,
        "the identity must be found exactly once"
    );
    Ok(ColorRespectingGroup {
        graph: g.clone(),
        keys,
    })
}

impl ColorRespectingGroup {
    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn graph(&self) -> &EdgeColoredGraph {
        &self.graph
    }

    /// The `k`-th element in canonical order.
    pub fn element(&self, k: usize) -> ColorRespectingAut {
        let (w, pi) = &self.keys[k];
        let map = extend(&self.graph, *w, pi).expect("stored pair extends");
        ColorRespectingAut {
            vertex_map: Perm::from_images(map).unwrap(),
            color_perm: Perm::from_images(pi.clone()).unwrap(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorRespectingAut> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }

    pub fn elements(&self) -> Vec<ColorRespectingAut> {
        self.iter().collect()
    }

    /// Image of vertex 0 and color permutation of each element.
    pub fn keys(&self) -> &[(usize, Vec<usize>)] {
        &self.keys
    }

    /// A generating set, chosen greedily in canonical order.
    pub fn generators(&self) -> Vec<ColorRespectingAut> {
        let n = self.graph.vertex_count();
        let mut group = PermGroup::trivial(n);
        let mut gens = Vec::new();
        for k in 0..self.order() {
            if group.order() == self.order() as u128 {
                break;
            }
            let e = self.element(k);
            if !group.contains(&e.vertex_map) {
                let mut vs: Vec<Perm> = group.generators().to_vec();
                vs.push(e.vertex_map.clone());
                group = PermGroup::new(n, vs);
                gens.push(e);
            }
        }
        gens
    }

    /// The action on vertices as a permutation group.
    pub fn vertex_group(&self) -> PermGroup {
        let n = self.graph.vertex_count();
        PermGroup::new(n, self.generators().into_iter().map(|e| e.vertex_map).collect())
    }

    /// The color-preserving elements, which form `Γ_p(G)`.
    pub fn color_preserving(&self) -> Vec<ColorRespectingAut> {
        (0..self.order())
            .filter(|&k| self.keys[k].1.iter().enumerate().all(|(i, &x)| i == x))
            .map(|k| self.element(k))
            .collect()
    }

    /// The color permutations induced by the elements, as a group on colors.
    pub fn kappa(&self) -> KappaReport {
        let r = self.graph.r();
        let mut image: Vec<Perm> = self.keys.iter().map(|(_, pi)| Perm::from_images(pi.clone()).unwrap()).collect();
        image.sort();
        image.dedup();
        let kernel_order = self.keys.iter().filter(|(_, pi)| pi.iter().enumerate().all(|(i, &x)| i == x)).count();
        let image_order = image.len();
        let full: usize = (1..=r).product();
        KappaReport {
            group_order: self.order(),
            image_order,
            kernel_order,
            surjective: image_order == full,
            image: PermGroup::from_elements(r, &image),
        }
    }

    /// Orbits of the group on color flags.
    pub fn flag_orbits(&self, budget: &Budget) -> Result<FlagOrbits> {
        let g = &self.graph;
        let total = flag_count(g);
        if total > budget.max_flags as u128 {
            return Err(Error::scale("flag count", total, budget.max_flags as u128));
        }
        let r = g.r();
        let fact: usize = (1..=r).product();
        let index = |f: &ColorFlag| f.vertex * fact + perm_rank(&f.order);
        let gens = self.generators();
        let mut uf = UnionFind::new(total as usize);
        for f in crate::colorful::flag_set(g) {
            let i = index(&f);
            for gen in &gens {
                uf.union(i, index(&gen.act_on_flag(&f)));
            }
        }
        let classes = uf.classes();
        let representatives = classes
            .iter()
            .map(|c| {
                let k = c[0];
                ColorFlag {
                    vertex: k / fact,
                    order: perm_unrank(r, k % fact),
                }
            })
            .collect();
        Ok(FlagOrbits {
            count: classes.len(),
            sizes: classes.iter().map(Vec::len).collect(),
            representatives,
        })
    }

    /// Regularity, decided both by counting flag orbits and by checking that
    /// the group is vertex-transitive with a vertex stabilizer inducing every
    /// color permutation. Disagreement is reported as an error.
    pub fn regularity(&self, budget: &Budget) -> Result<Regularity> {
        let orbits = self.flag_orbits(budget)?;
        let n = self.graph.vertex_count();
        let mut images = vec![false; n];
        for (w, _) in &self.keys {
            images[*w] = true;
        }
        let vertex_transitive = images.iter().all(|&b| b);
        let stabilizer: Vec<&Vec<usize>> = self.keys.iter().filter(|(w, _)| *w == 0).map(|(_, pi)| pi).collect();
        let full: usize = (1..=self.graph.r()).product();
        let stabilizer_symmetric = stabilizer.len() == full;
        let by_orbits = orbits.count == 1;
        let by_criterion = vertex_transitive && stabilizer_symmetric;
        if by_orbits != by_criterion {
            return Err(Error::InvariantViolated(format!(
                "flag orbit count {} disagrees with the vertex-stabilizer criterion",
                orbits.count
            )));
        }
        Ok(Regularity {
            regular: by_orbits,
            flag_orbits: orbits.count,
            vertex_transitive,
            stabilizer_symmetric,
        })
    }
}

/// The color-permutation homomorphism: image and kernel sizes.
#[derive(Debug, Clone)]
pub struct KappaReport {
    pub group_order: usize,
    pub image_order: usize,
    pub kernel_order: usize,
    /// Whether every color permutation is realized.
    pub surjective: bool,
    pub image: PermGroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagOrbits {
    pub count: usize,
    pub sizes: Vec<usize>,
    /// The least flag of each orbit.
    pub representatives: Vec<ColorFlag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub regular: bool,
    pub flag_orbits: usize,
    pub vertex_transitive: bool,
    pub stabilizer_symmetric: bool,
}

/// Lexicographic rank of a permutation of `0..n`.
fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// The face map `(C, v) -> (π(C), γ(v))` on the materialized polytope,
/// indexed by poset face id.
pub fn lift_to_polytope(aut: &ColorRespectingAut, p: &ColorfulPolytope) -> Vec<usize> {
    let mut map = vec![0; p.poset.face_count()];
    for (id, slot) in map.iter_mut().enumerate().skip(1) {
        let f = p.face(id).unwrap();
        let colors = f.colors.map(|c| aut.color_perm.apply(c));
        *slot = p.face_id(colors, aut.vertex_map.apply(f.rep));
    }
    map
}

/// All automorphisms of the underlying uncolored graph, by backtracking.
/// Only for graphs with at most 12 vertices.
pub fn graph_automorphisms(g: &EdgeColoredGraph) -> Result<Vec<Perm>> {
    let n = g.vertex_count();
    if n > 12 {
        return Err(Error::scale("vertex count for brute-force automorphisms", n as u128, 12u128));
    }
    let mut adj = vec![vec![false; n]; n];
    for (u, v, _) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(k: usize, adj: &[Vec<bool>], map: &mut [usize], used: &mut [bool], out: &mut Vec<Perm>) {
        let n = adj.len();
        if k == n {
            out.push(Perm::from_images(map.to_vec()).unwrap());
            return;
        }
        for t in 0..n {
            if used[t] || (0..k).any(|j| adj[k][j] != adj[t][map[j]]) {
                continue;
            }
            map[k] = t;
            used[t] = true;
            go(k + 1, adj, map, used, out);
            used[t] = false;
        }
    }
    go(0, &adj, &mut map, &mut used, &mut out);
    Ok(out)
}

/// A color isomorphism `g -> h` mapping color `c` to `color_map[c]`, if one
/// exists. With connected graphs it is determined by the image of vertex 0.
pub fn colored_isomorphism(g: &EdgeColoredGraph, h: &EdgeColoredGraph, color_map: &[usize]) -> Option<Perm> {
    if g.vertex_count() != h.vertex_count() || g.r() != h.r() {
        return None;
    }
    let n = g.vertex_count();
    let mut result = None;
    let _ = (0..n).try_for_each(|w| {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = w;
        used[w] = true;
        let mut queue = vec![0];
        let mut k = 0;
        let mut ok = true;
        'bfs: while k < queue.len() {
            let u = queue[k];
            k += 1;
            for (c, &hc) in color_map.iter().enumerate() {
                let x = g.neighbor(u, c);
                let y = h.neighbor(map[u], hc);
                if map[x] == usize::MAX {
                    if used[y] {
                        ok = false;
                        break 'bfs;
                    }
                    map[x] = y;
                    used[y] = true;
                    queue.push(x);
                } else if map[x] != y {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok {
            result = Perm::from_images(map);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    result
}

/// The face-level group of the lifted automorphisms.
pub fn lifted_group(group: &ColorRespectingGroup, p: &ColorfulPolytope) -> Vec<Perm> {
    let mut out: Vec<Perm> = group
        .iter()
        .map(|a| Perm::from_images(lift_to_polytope(&a, p)).expect("lift is a bijection"))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorful::build_poset;
    use crate::ecgraph::parse_graph;
    use crate::poset::poset_automorphisms;

    fn k4() -> EdgeColoredGraph {
        parse_graph("1 2 a\n3 4 a\n1 3 b\n2 4 b\n1 4 c\n2 3 c\n").unwrap()
    }

    #[test]
    fn rank_round_trip() {
        for (k, p) in (0..4).permutations(4).enumerate() {
            assert_eq!(perm_rank(&p), k);
            assert_eq!(perm_unrank(4, k), p);
        }
    }

    #[test]
    fn k4_group() {
        let g = k4();
        let grp = color_respecting_group(&g, &Budget::default()).unwrap();
        assert_eq!(grp.order(), 24);
        let kappa = grp.kappa();
        assert_eq!((kappa.image_order, kappa.kernel_order), (6, 4));
        assert!(kappa.surjective);
        assert_eq!(grp.color_preserving().len(), 4);
        assert!(grp.iter().all(|a| a.respects(&g)));
        assert_eq!(grp.vertex_group().order(), 24);
        let reg = grp.regularity(&Budget::default()).unwrap();
        assert!(reg.regular);
        assert_eq!(reg.flag_orbits, 1);
    }

    #[test]
    fn kappa_is_a_homomorphism() {
        let g = k4();
        let elems = color_respecting_group(&g, &Budget::default()).unwrap().elements();
        for a in &elems {
            for b in &elems {
                let ab = a.compose(b);
                assert!(ab.respects(&g));
                assert!(elems.contains(&ab));
            }
        }
    }

    #[test]
    fn lift_matches_poset_oracle() {
        let g = k4();
        let p = build_poset(&g, &Budget::default()).unwrap();
        let grp = color_respecting_group(&g, &Budget::default()).unwrap();
        let lifted = lifted_group(&grp, &p);
        assert!(lifted.iter().all(|m| p.poset.is_automorphism(&m.images().collect::<Vec<_>>())));
        let oracle = poset_automorphisms(&p.poset, 1000).unwrap();
        assert_eq!(lifted, oracle.elements);
        let id = lift_to_polytope(&ColorRespectingAut::identity(4, 3), &p);
        assert!(id.iter().enumerate().all(|(i, &x)| i == x));
    }

    #[test]
    fn segment_group() {
        let g = parse_graph("1 2 a").unwrap();
        let grp = color_respecting_group(&g, &Budget::default()).unwrap();
        let kappa = grp.kappa();
        assert_eq!((grp.order(), kappa.image_order, kappa.kernel_order), (2, 1, 2));
    }

    #[test]
    fn brute_force_automorphisms() {
        let g = k4();
        assert_eq!(graph_automorphisms(&g).unwrap().len(), 24);
        let k33 = parse_graph("1 4 a\n2 5 a\n3 6 a\n1 5 b\n2 6 b\n3 4 b\n1 6 c\n2 4 c\n3 5 c\n").unwrap();
        assert_eq!(graph_automorphisms(&k33).unwrap().len(), 72);
    }

    #[test]
    fn isomorphism_under_recoloring() {
        let g = k4();
        let h = g.recolor(&[2, 0, 1]);
        assert!(colored_isomorphism(&g, &h, &[2, 0, 1]).is_some());
        // every color permutation of K4 is realized, so a color-preserving map exists too
        assert!(colored_isomorphism(&g, &h, &[0, 1, 2]).is_some());
        let c6 = parse_graph("1 2 a\n2 3 b\n3 4 a\n4 5 b\n5 6 a\n6 1 b\n").unwrap();
        let c6b = parse_graph("1 2 a\n2 3 b\n3 4 a\n4 1 b\n5 6 a\n6 7 b\n7 8 a\n8 5 b\n");
        assert!(c6b.is_err());
        assert!(colored_isomorphism(&g, &c6, &[0, 1]).is_none());
    }

    #[test]
    fn too_many_colors_for_search() {
        let g = k4();
        let budget = Budget { max_search_colors: 2, ..Budget::default() };
        assert_eq!(color_respecting_group(&g, &budget).unwrap_err().code(), "ScaleExceeded");
    }
}
