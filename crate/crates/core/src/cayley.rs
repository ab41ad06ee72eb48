//! Cayley graphs of permutation groups over sets of involutions, the
//! automorphisms of a group that permute its generators, and graphicahedra.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::autgroup::color_respecting_group;
use crate::ecgraph::{EdgeColoredGraph, SimpleGraph};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};
use crate::Budget;

/// A permutation group `Γ` with an ordered list `T` of distinct involutions
/// generating it.
#[derive(Debug, Clone)]
pub struct GenGroup {
    degree: usize,
    involutions: Vec<Perm>,
    names: Vec<String>,
    group: PermGroup,
}

impl GenGroup {
    /// Checks that every element of `involutions` is an involution, that they
    /// are distinct, and that they generate the group generated by `ambient`
    /// (or just themselves when `ambient` is empty).
    pub fn new(degree: usize, ambient: Vec<Perm>, involutions: Vec<Perm>, names: Vec<String>) -> Result<Self> {
        assert_eq!(involutions.len(), names.len());
        for (i, t) in involutions.iter().enumerate() {
            if t.degree() != degree || !t.is_involution() {
                return Err(Error::NotInvolution { index: i });
            }
            if let Some(j) = involutions[..i].iter().position(|s| s == t) {
                return Err(Error::DuplicateGenerator { index: i, earlier: j });
            }
        }
        let generated = PermGroup::new(degree, involutions.clone());
        let group = if ambient.is_empty() {
            generated
        } else {
            let ambient = PermGroup::new(degree, ambient);
            if !ambient.contains_group(&generated) || ambient.order() != generated.order() {
                return Err(Error::DoesNotGenerate(format!(
                    "the involutions generate a group of order {} inside a group of order {}",
                    generated.order(),
                    ambient.order()
                )));
            }
            ambient
        };
        Ok(GenGroup {
            degree,
            involutions,
            names,
            group,
        })
    }

    /// `S_p` acting naturally on `0..p`, with one transposition `(u v)` per
    /// edge of `g`.
    pub fn symmetric_from_graph(g: &SimpleGraph) -> Result<Self> {
        let p = g.vertex_count();
        let mut ambient = Vec::new();
        if p >= 2 {
            let mut cycle: Vec<usize> = (1..p).collect();
            cycle.push(0);
            ambient.push(Perm::transposition(p, 0, 1));
            ambient.push(Perm::from_images(cycle).unwrap());
        } else {
            ambient.push(Perm::identity(p));
        }
        let involutions = g.edges().iter().map(|&(u, v)| Perm::transposition(p, u, v)).collect();
        let names = g
            .edges()
            .iter()
            .map(|&(u, v)| format!("{}-{}", g.names()[u], g.names()[v]))
            .collect();
        GenGroup::new(p, ambient, involutions, names)
    }

    /// `Z_2^n` acting on `2n` points, generator `i` swapping `2i` and `2i+1`.
    pub fn elementary_abelian(n: usize) -> Self {
        let involutions: Vec<Perm> = (0..n).map(|i| Perm::transposition(2 * n, 2 * i, 2 * i + 1)).collect();
        let names = (0..n).map(|i| format!("t{i}")).collect();
        GenGroup::new(2 * n, Vec::new(), involutions, names).expect("canonical generators are valid")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn involutions(&self) -> &[Perm] {
        &self.involutions
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
}

/// A Cayley graph with its vertices identified with group elements.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub graph: EdgeColoredGraph,
    /// Group element of each vertex, in breadth-first order from the identity.
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl CayleyGraph {
    pub fn vertex_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Right multiplication `u -> u g⁻¹` as a permutation of the vertices.
    pub fn right_multiplication(&self, g: &Perm) -> Perm {
        let inv = g.inverse();
        let images = self.elements.iter().map(|u| self.index[&u.compose(&inv)]).collect();
        Perm::from_images(images).expect("right multiplication is a bijection")
    }

    /// The group `Γ̂` of all right multiplications, generated by those of the
    /// involutions.
    pub fn right_regular_group(&self, gg: &GenGroup) -> PermGroup {
        let gens = gg.involutions().iter().map(|t| self.right_multiplication(t)).collect();
        PermGroup::new(self.elements.len(), gens)
    }
}

/// The Cayley graph: vertices are group elements numbered in breadth-first
/// order from the identity (generator index breaking ties), and `u` is joined
/// to `τ_i ∘ u` by an edge of color `i`.
pub fn cayley_graph(gg: &GenGroup, budget: &Budget) -> Result<CayleyGraph> {
    let order = gg.order();
    if order > budget.max_group_order as u128 {
        return Err(Error::scale("group order", order, budget.max_group_order as u128));
    }
    let n = gg.involutions.len();
    let mut elements = vec![Perm::identity(gg.degree)];
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut table: Vec<Vec<usize>> = Vec::with_capacity(order as usize);
    let mut k = 0;
    while k < elements.len() {
        let mut row = Vec::with_capacity(n);
        for t in &gg.involutions {
            let v = t.compose(&elements[k]);
            let id = match index.get(&v) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    index.insert(v.clone(), id);
                    elements.push(v);
                    id
                }
            };
            row.push(id);
        }
        table.push(row);
        k += 1;
    }
    debug_assert_eq!(elements.len() as u128, order);
    let names = (0..elements.len()).map(|i| i.to_string()).collect();
    let graph = EdgeColoredGraph::from_neighbor_table(names, gg.names.clone(), &table)?;
    Ok(CayleyGraph {
        graph,
        elements,
        index,
    })
}

/// An automorphism of `Γ` permuting `T`: `τ_i -> τ_{d̄(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAutomorphism {
    /// The permutation `d̄` of generator indices.
    pub subscripts: Perm,
    /// The automorphism as a permutation of the Cayley graph vertices.
    pub vertex_map: Perm,
}

/// Extends `τ_i -> τ_{pi(i)}` to a map on group elements by
/// `d(τ_i ∘ u) = τ_{pi(i)} ∘ d(u)`, returning it when it is a well-defined
/// bijection, hence an automorphism.
pub fn extend_generator_map(cg: &CayleyGraph, pi: &[usize]) -> Option<Perm> {
    let g = &cg.graph;
    let n = g.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    for u in 0..n {
        // breadth-first numbering means every vertex after 0 is reached from
        // an earlier one, so map[u] is set here
        let du = map[u];
        for (i, &pi_i) in pi.iter().enumerate() {
            let x = g.neighbor(u, i);
            let y = g.neighbor(du, pi_i);
            if map[x] == usize::MAX {
                if used[y] {
                    return None;
                }
                map[x] = y;
                used[y] = true;
            } else if map[x] != y {
                return None;
            }
        }
    }
    Perm::from_images(map)
}

/// All automorphisms of `Γ` mapping `T` onto itself, one per generator
/// permutation that extends. Every one of the `n!` permutations is tried.
pub fn aut_gamma_t(gg: &GenGroup, cg: &CayleyGraph, budget: &Budget) -> Result<Vec<GeneratorAutomorphism>> {
    let n = gg.involutions.len();
    if n > budget.max_search_colors {
        return Err(Error::scale("generator count for permutation search", n as u128, budget.max_search_colors as u128));
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let found: Vec<GeneratorAutomorphism> = perms
        .par_iter()
        .filter_map(|pi| {
            extend_generator_map(cg, pi).map(|vertex_map| GeneratorAutomorphism {
                subscripts: Perm::from_images(pi.clone()).unwrap(),
                vertex_map,
            })
        })
        .collect();
    Ok(found)
}

/// Element-level action of a generator automorphism: `d(g)` for a group
/// element `g`.
pub fn apply_to_element(cg: &CayleyGraph, d: &GeneratorAutomorphism, g: &Perm) -> Perm {
    cg.elements[d.vertex_map.apply(cg.index[g])].clone()
}

/// The facts making `Γ_c` of a Cayley graph a semidirect product of the
/// right-regular group and the generator automorphisms.
#[derive(Debug, Clone, Serialize)]
pub struct SemidirectReport {
    pub group_order: u128,
    pub aut_order: usize,
    pub color_respecting_order: usize,
    /// `|Γ_c| = |Γ| * |Aut(Γ, T)|`.
    pub order_matches: bool,
    /// Right multiplications form a normal subgroup of `Γ_c`.
    pub normal: bool,
    /// No non-identity generator automorphism is a right multiplication.
    pub trivial_intersection: bool,
    /// `d ĝ d⁻¹ = \widehat{d(g)}` for every `d` and every `g` checked.
    pub conjugation_identity: bool,
    /// Right multiplications and generator automorphisms are color
    /// respecting and act as claimed.
    pub contained: bool,
}

impl SemidirectReport {
    pub fn holds(&self) -> bool {
        self.order_matches && self.normal && self.trivial_intersection && self.conjugation_identity && self.contained
    }
}

/// Verifies the semidirect decomposition of `Γ_c` of the Cayley graph.
pub fn check_semidirect(gg: &GenGroup, budget: &Budget) -> Result<SemidirectReport> {
    let cg = cayley_graph(gg, budget)?;
    let auts = aut_gamma_t(gg, &cg, budget)?;
    let gamma_c = color_respecting_group(&cg.graph, budget)?;
    let n = cg.elements.len();
    let hat = cg.right_regular_group(gg);
    let full = gamma_c.vertex_group();

    let contained = full.contains_group(&hat)
        && auts.iter().all(|d| full.contains(&d.vertex_map))
        && hat.order() == n as u128;
    let normal = full.normalizes(&hat);
    let trivial_intersection = auts
        .iter()
        .all(|d| d.vertex_map.is_identity() || !hat.contains(&d.vertex_map));
    // all group elements when small, the generators otherwise
    let sample: Vec<Perm> = if n <= 5000 {
        cg.elements.clone()
    } else {
        gg.involutions().to_vec()
    };
    let conjugation_identity = auts.iter().all(|d| {
        let dinv = d.vertex_map.inverse();
        sample.iter().all(|g| {
            let lhs = d.vertex_map.compose(&cg.right_multiplication(g)).compose(&dinv);
            lhs == cg.right_multiplication(&apply_to_element(&cg, d, g))
        })
    });
    Ok(SemidirectReport {
        group_order: gg.order(),
        aut_order: auts.len(),
        color_respecting_order: gamma_c.order(),
        order_matches: gamma_c.order() as u128 == gg.order() * auts.len() as u128,
        normal,
        trivial_intersection,
        conjugation_identity,
        contained,
    })
}

/// The Cayley graph of `S_p` over the transpositions of the edges of `g`;
/// its colorful polytope is the graphicahedron of `g`.
pub fn graphicahedron(g: &SimpleGraph, budget: &Budget) -> Result<(GenGroup, CayleyGraph)> {
    if !g.is_connected() {
        return Err(Error::DoesNotGenerate(format!(
            "the transpositions of a disconnected graph on {} vertices do not generate the symmetric group",
            g.vertex_count()
        )));
    }
    let p = g.vertex_count() as u128;
    let order: u128 = (1..=p).product();
    if order > budget.max_group_order as u128 {
        return Err(Error::scale("group order", order, budget.max_group_order as u128));
    }
    let gg = GenGroup::symmetric_from_graph(g)?;
    let cg = cayley_graph(&gg, budget)?;
    Ok((gg, cg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SimpleGraph {
        SimpleGraph::parse("1 2\n2 3\n").unwrap()
    }

    fn triangle() -> SimpleGraph {
        SimpleGraph::parse("1 2\n2 3\n1 3\n").unwrap()
    }

    #[test]
    fn cube_from_z2_cubed() {
        let gg = GenGroup::elementary_abelian(3);
        let cg = cayley_graph(&gg, &Budget::default()).unwrap();
        assert_eq!(cg.graph.vertex_count(), 8);
        assert_eq!(cg.graph.edge_count(), 12);
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(cg.graph.bicolored_cycle_len(0, i, j), 4);
            }
        }
        assert_eq!(aut_gamma_t(&gg, &cg, &Budget::default()).unwrap().len(), 6);
    }

    #[test]
    fn s3_all_transpositions_is_k33() {
        let gg = GenGroup::symmetric_from_graph(&triangle()).unwrap();
        let cg = cayley_graph(&gg, &Budget::default()).unwrap();
        let g = &cg.graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        // bipartite by parity and every odd-even pair adjacent
        let sign = |p: &Perm| (p.degree() - crate::perm::orbits_of(p.degree(), std::slice::from_ref(p)).len()) % 2;
        for u in 0..6 {
            for v in 0..6 {
                let adjacent = g.edge_color(u, v).is_some();
                assert_eq!(adjacent, sign(&cg.elements[u]) != sign(&cg.elements[v]));
            }
        }
    }

    #[test]
    fn s3_path_is_hexagon() {
        let gg = GenGroup::symmetric_from_graph(&path3()).unwrap();
        let cg = cayley_graph(&gg, &Budget::default()).unwrap();
        assert_eq!(cg.graph.vertex_count(), 6);
        assert_eq!(cg.graph.bicolored_cycle_len(0, 0, 1), 6);
        let auts = aut_gamma_t(&gg, &cg, &Budget::default()).unwrap();
        assert_eq!(auts.len(), 2);
        // the automorphisms are homomorphisms
        for d in &auts {
            for a in &cg.elements {
                for b in &cg.elements {
                    let lhs = apply_to_element(&cg, d, &a.compose(b));
                    let rhs = apply_to_element(&cg, d, a).compose(&apply_to_element(&cg, d, b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn semidirect_products() {
        let budget = Budget::default();
        let r = check_semidirect(&GenGroup::symmetric_from_graph(&path3()).unwrap(), &budget).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.color_respecting_order, 12);
        let r = check_semidirect(&GenGroup::elementary_abelian(3), &budget).unwrap();
        assert!(r.holds());
        assert_eq!(r.color_respecting_order, 48);
        let r = check_semidirect(&GenGroup::symmetric_from_graph(&triangle()).unwrap(), &budget).unwrap();
        assert!(r.holds());
        assert_eq!(r.color_respecting_order, 36);
    }

    #[test]
    fn right_multiplication_is_regular_and_color_preserving() {
        let gg = GenGroup::symmetric_from_graph(&triangle()).unwrap();
        let cg = cayley_graph(&gg, &Budget::default()).unwrap();
        for g in &cg.elements {
            let m = cg.right_multiplication(g);
            for (u, v, c) in cg.graph.edges() {
                assert_eq!(cg.graph.neighbor(m.apply(u), c), m.apply(v));
            }
            assert_eq!(m.fixed_points() == 6, g.is_identity());
        }
    }

    #[test]
    fn invalid_generators() {
        let t = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let err = GenGroup::new(3, vec![], vec![t], vec!["x".into()]).unwrap_err();
        assert_eq!(err.code(), "NotInvolution");
        let s = Perm::transposition(3, 0, 1);
        let err = GenGroup::new(3, vec![], vec![s.clone(), s.clone()], vec!["x".into(), "y".into()]).unwrap_err();
        assert_eq!(err.code(), "DuplicateGenerator");
        let ambient = vec![Perm::transposition(3, 0, 1), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()];
        let err = GenGroup::new(3, ambient, vec![s], vec!["x".into()]).unwrap_err();
        assert_eq!(err.code(), "DoesNotGenerate");
    }

    #[test]
    fn graphicahedron_budget() {
        let k9 = SimpleGraph::parse(
            &(1..=9).tuple_combinations().map(|(a, b)| format!("{a} {b}\n")).collect::<String>(),
        )
        .unwrap();
        assert_eq!(graphicahedron(&k9, &Budget::default()).unwrap_err().code(), "ScaleExceeded");
    }
}
