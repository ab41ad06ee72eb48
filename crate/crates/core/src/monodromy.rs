//! Monodromy groups, monodromy polytopes and their covering maps.
//!
//! The monodromy group of a polytope is generated by the permutations `s_i`
//! of the flags sending each flag to its `i`-adjacent flag. Its Cayley graph
//! `M` over the `s_i` covers the flag graph: the quotient of `M` by the
//! stabilizer `H` of a base flag is isomorphic to the flag graph, and the
//! colorful polytope of `M` covers the flag-adjacency polytope.
//!
//! Group elements act on flags by composition of permutations; the coset
//! `uH` corresponds to the flag `u(Φ)` for the base flag `Φ` (flag 0, the
//! lexicographically least one).

use std::collections::HashMap;

use serde::Serialize;

use crate::autgroup::{color_respecting_group, colored_isomorphism};
use crate::cayley::{cayley_graph, extend_generator_map, CayleyGraph, GenGroup};
use crate::colorful::{build_poset, cflag_adjacent, flag_set, ColorfulPolytope};
use crate::ecgraph::EdgeColoredGraph;
use crate::error::{Error, Result};
use crate::flagpoly::{flag_adjacency_polytope, flag_graph, layer_hypothesis};
use crate::perm::{Perm, PermGroup};
use crate::poset::{FlagSystem, RankedPoset};
use crate::Budget;

/// `Mon(P)` as a permutation group on the flags of `P`.
#[derive(Debug, Clone)]
pub struct MonodromyGroup {
    pub system: FlagSystem,
    /// `generators[i]` sends every flag to its `i`-adjacent flag.
    pub generators: Vec<Perm>,
    pub group: PermGroup,
}

impl MonodromyGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn flag_count(&self) -> usize {
        self.system.len()
    }

    /// The generators with their names `0..n`, ready for the Cayley graph.
    pub fn gen_group(&self) -> Result<GenGroup> {
        let names = (0..self.generators.len()).map(|i| i.to_string()).collect();
        GenGroup::new(self.system.len(), Vec::new(), self.generators.clone(), names)
    }
}

/// Builds `Mon(P)` and checks the relations it must satisfy: every `s_i` is
/// a fixed-point-free involution, `s_i s_j` has order at most 2 when
/// `|i - j| >= 2`, and the group is transitive on flags.
pub fn monodromy_group(p: &RankedPoset, budget: &Budget) -> Result<MonodromyGroup> {
    let system = FlagSystem::new(p, budget.max_flags)?;
    let generators: Vec<Perm> = system
        .adjacent
        .iter()
        .map(|row| Perm::from_images(row.clone()).expect("adjacency is a bijection"))
        .collect();
    for (i, s) in generators.iter().enumerate() {
        if !s.is_involution() || s.fixed_points() != 0 {
            return Err(Error::InvariantViolated(format!(
                "generator {i} is not a fixed-point-free involution"
            )));
        }
        for (j, t) in generators.iter().enumerate().skip(i + 2) {
            if !s.compose(t).compose(&s.compose(t)).is_identity() {
                return Err(Error::InvariantViolated(format!(
                    "generators {i} and {j} do not commute"
                )));
            }
        }
    }
    let group = PermGroup::new(system.len(), generators.clone());
    if !group.is_transitive() {
        return Err(Error::InvariantViolated("monodromy group is not transitive on flags".into()));
    }
    Ok(MonodromyGroup {
        system,
        generators,
        group,
    })
}

/// The Cayley graph `M` of `Mon(P)` over its generators.
pub fn monodromy_cayley(mon: &MonodromyGroup, budget: &Budget) -> Result<CayleyGraph> {
    cayley_graph(&mon.gen_group()?, budget)
}

/// The colorful polytope of `M`.
pub fn monodromy_polytope(p: &RankedPoset, budget: &Budget) -> Result<ColorfulPolytope> {
    let mon = monodromy_group(p, budget)?;
    build_poset(&monodromy_cayley(&mon, budget)?.graph, budget)
}

/// The quotient of `M` by the cosets of the base flag stabilizer.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: EdgeColoredGraph,
    /// Coset of each vertex of `M`.
    pub coset_of: Vec<usize>,
    /// The flag `φ(uH) = u(Φ)` of each coset.
    pub phi: Vec<usize>,
    pub stabilizer_order: usize,
}

/// Builds `M/H` with explicitly computed cosets `uH`, checks that the edge
/// coloring descends to the quotient, and that `φ` is a color-preserving
/// isomorphism onto the flag graph.
pub fn quotient_by_stabilizer(mon: &MonodromyGroup, cg: &CayleyGraph) -> Result<Quotient> {
    let m = &cg.graph;
    let base = 0;
    let stabilizer: Vec<&Perm> = cg.elements.iter().filter(|h| h.apply(base) == base).collect();

    let mut coset_of = vec![usize::MAX; m.vertex_count()];
    let mut phi = Vec::new();
    for u in 0..m.vertex_count() {
        if coset_of[u] != usize::MAX {
            continue;
        }
        let id = phi.len();
        let rep = &cg.elements[u];
        for h in &stabilizer {
            let v = cg.vertex_of(&rep.compose(h)).expect("product is a group element");
            if coset_of[v] != usize::MAX {
                return Err(Error::InvariantViolated("cosets overlap".into()));
            }
            coset_of[v] = id;
        }
        phi.push(rep.apply(base));
    }
    // a coset is exactly the set of elements sending the base flag to φ
    for (u, el) in cg.elements.iter().enumerate() {
        if phi[coset_of[u]] != el.apply(base) {
            return Err(Error::InvariantViolated(format!(
                "vertex {u} lies in a coset with a different flag"
            )));
        }
    }

    let r = m.r();
    let mut table = vec![vec![usize::MAX; r]; phi.len()];
    for u in 0..m.vertex_count() {
        for (i, slot) in table[coset_of[u]].iter_mut().enumerate() {
            let target = coset_of[m.neighbor(u, i)];
            if *slot != usize::MAX && *slot != target {
                return Err(Error::InvariantViolated(format!(
                    "color {i} is not well defined on the coset of vertex {u}"
                )));
            }
            *slot = target;
        }
    }
    if table.iter().enumerate().any(|(k, row)| row.contains(&k)) {
        return Err(Error::InvariantViolated("quotient has a loop".into()));
    }
    let names = (0..phi.len()).map(|i| i.to_string()).collect();
    let graph = EdgeColoredGraph::from_neighbor_table(names, m.color_names().to_vec(), &table)?;

    let bijective = Perm::from_images(phi.clone()).is_some() && phi.len() == mon.flag_count();
    let preserves = (0..phi.len()).all(|k| (0..r).all(|i| phi[graph.neighbor(k, i)] == mon.system.adjacent[i][phi[k]]));
    if !bijective || !preserves {
        return Err(Error::InvariantViolated(
            "φ is not a color-preserving isomorphism onto the flag graph".into(),
        ));
    }
    Ok(Quotient {
        graph,
        coset_of,
        phi,
        stabilizer_order: stabilizer.len(),
    })
}

/// Verification of the map from the monodromy polytope onto the
/// flag-adjacency polytope.
#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    pub monodromy_faces: usize,
    pub flag_adjacency_faces: usize,
    /// Every vertex of a face is sent into the same image face.
    pub well_defined: bool,
    pub surjective: bool,
    pub rank_preserving: bool,
    /// Covers are sent to covers.
    pub incidence_preserving: bool,
    /// Flags go to flags and `i`-adjacent flags to `i`-adjacent flags.
    pub flag_adjacency_preserving: bool,
    pub injective: bool,
    /// `|Mon(P)|` equals the number of flags.
    pub regular: bool,
}

impl CoveringReport {
    pub fn is_covering(&self) -> bool {
        self.well_defined
            && self.surjective
            && self.rank_preserving
            && self.incidence_preserving
            && self.flag_adjacency_preserving
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_covering() && self.injective
    }
}

/// The face map `(C, u) -> (C, φ(uH))` with its verification report.
pub fn covering_map(p: &RankedPoset, budget: &Budget) -> Result<(Vec<usize>, CoveringReport)> {
    let mon = monodromy_group(p, budget)?;
    let cg = monodromy_cayley(&mon, budget)?;
    let quotient = quotient_by_stabilizer(&mon, &cg)?;
    let mp = build_poset(&cg.graph, budget)?;
    let fa = flag_adjacency_polytope(p, budget)?;
    let flag_of = |u: usize| quotient.phi[quotient.coset_of[u]];

    let total = mp.poset.face_count();
    let mut map = vec![0usize; total];
    for (id, slot) in map.iter_mut().enumerate().skip(1) {
        let f = mp.face(id).unwrap();
        *slot = fa.face_id(f.colors, flag_of(f.rep));
    }
    let well_defined = (1..total).all(|id| {
        let f = mp.face(id).unwrap();
        let part = mp.partition(f.colors);
        let class = part.class_of[f.rep];
        (0..cg.graph.vertex_count())
            .filter(|&u| part.class_of[u] == class)
            .all(|u| fa.face_id(f.colors, flag_of(u)) == map[id])
    });

    let mut hit = vec![false; fa.poset.face_count()];
    for &g in &map {
        hit[g] = true;
    }
    let surjective = hit.iter().all(|&b| b);
    let rank_preserving = (0..total).all(|f| mp.poset.rank_of(f) == fa.poset.rank_of(map[f]));
    let incidence_preserving = (0..total).all(|f| {
        mp.poset
            .down(f)
            .iter()
            .all(|&d| fa.poset.down(map[f]).binary_search(&map[d]).is_ok())
    });
    let n = p.rank();
    let image = |chain: &crate::poset::ChainFlag| crate::poset::ChainFlag(chain.0.iter().map(|&x| map[x]).collect());
    let flag_adjacency_preserving = flag_set(&cg.graph).all(|cf| {
        let chain = mp.chain_flag(&cf);
        let img = image(&chain);
        let mut expected = cf.clone();
        expected.vertex = flag_of(cf.vertex);
        img == fa.chain_flag(&expected)
            && (0..n).all(|i| {
                let adj = mp.chain_flag(&cflag_adjacent(&cg.graph, &cf, i));
                fa.poset.flag_adjacent(&img, i).map(|x| x == image(&adj)).unwrap_or(false)
            })
    });
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == total;
    let report = CoveringReport {
        monodromy_faces: total,
        flag_adjacency_faces: fa.poset.face_count(),
        well_defined,
        surjective,
        rank_preserving,
        incidence_preserving,
        flag_adjacency_preserving,
        injective,
        regular: mon.order() == mon.flag_count() as u128,
    };
    Ok((map, report))
}

/// Whether `s_i -> s_{n-1-i}` extends to an automorphism of `Mon(P)`,
/// and the resulting prediction for the color-respecting group of `M`.
#[derive(Debug, Clone, Serialize)]
pub struct ReversalReport {
    pub exists: bool,
    pub monodromy_order: u128,
    /// `|Mon(P)|`, doubled when the reversal exists and is not trivial.
    pub predicted_order: u128,
    pub color_respecting_order: usize,
}

impl ReversalReport {
    pub fn consistent(&self) -> bool {
        self.predicted_order == self.color_respecting_order as u128
    }
}

/// Tests the generator reversal. Requires that no face layer graph of `p` is
/// complete bipartite.
pub fn generator_reversal_automorphism(p: &RankedPoset, budget: &Budget) -> Result<ReversalReport> {
    if !layer_hypothesis(p) {
        return Err(Error::HypothesisViolated(
            "some face layer graph is complete bipartite".into(),
        ));
    }
    let mon = monodromy_group(p, budget)?;
    let cg = monodromy_cayley(&mon, budget)?;
    let n = p.rank();
    let reversal: Vec<usize> = (0..n).rev().collect();
    let exists = extend_generator_map(&cg, &reversal).is_some();
    let factor = if exists && n >= 2 { 2 } else { 1 };
    let gc = color_respecting_group(&cg.graph, budget)?;
    Ok(ReversalReport {
        exists,
        monodromy_order: mon.order(),
        predicted_order: mon.order() * factor,
        color_respecting_order: gc.order(),
    })
}

/// Four characterizations of regularity, each computed on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularityComparison {
    /// `|Mon(P)| = |flags|`.
    pub order_equals_flags: bool,
    /// Only the identity of `Mon(P)` fixes a flag.
    pub free_action: bool,
    /// `M` is color-isomorphic to the flag graph.
    pub cayley_is_flag_graph: bool,
    /// The automorphism group of `P` is transitive on flags.
    pub flag_transitive: bool,
}

impl RegularityComparison {
    pub fn agree(&self) -> bool {
        let v = [self.order_equals_flags, self.free_action, self.cayley_is_flag_graph, self.flag_transitive];
        v.iter().all(|&b| b == v[0])
    }

    pub fn regular(&self) -> bool {
        self.agree() && self.order_equals_flags
    }
}

pub fn compare_regularity(p: &RankedPoset, budget: &Budget) -> Result<RegularityComparison> {
    let mon = monodromy_group(p, budget)?;
    let cg = monodromy_cayley(&mon, budget)?;
    let fg = flag_graph(p, budget)?;
    let identity: Vec<usize> = (0..p.rank()).collect();
    let free_action = cg.elements.iter().all(|u| u.is_identity() || u.fixed_points() == 0);
    let cayley_is_flag_graph = colored_isomorphism(&cg.graph, &fg.graph, &identity).is_some();
    // automorphisms of P are the color-preserving automorphisms of its flag graph
    let preserving = color_respecting_group(&fg.graph, budget)?.kappa().kernel_order;
    Ok(RegularityComparison {
        order_equals_flags: mon.order() == mon.flag_count() as u128,
        free_action,
        cayley_is_flag_graph,
        flag_transitive: preserving == fg.graph.vertex_count(),
    })
}

/// Number of cosets of each size, a sanity summary for reports.
pub fn coset_sizes(q: &Quotient) -> HashMap<usize, usize> {
    let mut count = vec![0usize; q.phi.len()];
    for &c in &q.coset_of {
        count[c] += 1;
    }
    let mut out = HashMap::new();
    for c in count {
        *out.entry(c).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> RankedPoset {
        let faces = vec![
            vec![0, 1, 3, 2],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 3, 7, 6],
            vec![0, 2, 6, 4],
            vec![1, 3, 7, 5],
        ];
        RankedPoset::from_polyhedron(8, &faces).unwrap()
    }

    fn tetrahedron() -> RankedPoset {
        RankedPoset::from_polyhedron(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn square_pyramid() -> RankedPoset {
        let faces = vec![vec![0, 1, 2, 3], vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]];
        RankedPoset::from_polyhedron(5, &faces).unwrap()
    }

    #[test]
    fn polygon_groups_are_dihedral() {
        let b = Budget::default();
        for p in 3..7 {
            let mon = monodromy_group(&RankedPoset::polygon(p), &b).unwrap();
            assert_eq!(mon.order(), 2 * p as u128);
        }
    }

    #[test]
    fn regular_cases() {
        let b = Budget::default();
        for p in [RankedPoset::polygon(3), cube(), tetrahedron(), RankedPoset::segment()] {
            let cmp = compare_regularity(&p, &b).unwrap();
            assert!(cmp.agree() && cmp.regular(), "{cmp:?}");
            let (_, report) = covering_map(&p, &b).unwrap();
            assert!(report.is_isomorphism(), "{report:?}");
        }
    }

    #[test]
    fn square_pyramid_is_covered_properly() {
        let b = Budget::default();
        let p = square_pyramid();
        let mon = monodromy_group(&p, &b).unwrap();
        assert_eq!(mon.flag_count(), 32);
        assert_eq!(mon.order(), 6144);
        let cg = monodromy_cayley(&mon, &b).unwrap();
        let q = quotient_by_stabilizer(&mon, &cg).unwrap();
        assert_eq!(q.graph.vertex_count(), 32);
        assert_eq!(q.stabilizer_order, 192);
        assert_eq!(coset_sizes(&q).get(&192), Some(&32));
        let cmp = compare_regularity(&p, &b).unwrap();
        assert!(cmp.agree() && !cmp.regular());
    }

    #[test]
    fn reversal() {
        let b = Budget::default();
        let r = generator_reversal_automorphism(&RankedPoset::polygon(3), &b).unwrap();
        assert!(r.exists && r.consistent());
        assert_eq!(r.color_respecting_order, 12);
        let r = generator_reversal_automorphism(&cube(), &b).unwrap();
        assert!(!r.exists && r.consistent());
        assert_eq!(r.color_respecting_order, 48);
        let r = generator_reversal_automorphism(&tetrahedron(), &b).unwrap();
        assert!(r.exists && r.consistent());
        assert_eq!(r.color_respecting_order, 48);
    }

    #[test]
    fn hypothesis_violation() {
        let ditope = RankedPoset::from_polyhedron(3, &[vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let err = generator_reversal_automorphism(&ditope, &Budget::default()).unwrap_err();
        assert_eq!(err.code(), "HypothesisViolated");
    }
}
