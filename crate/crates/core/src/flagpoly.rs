//! Flag graphs and flag-adjacency polytopes.
//!
//! The flag graph of a polytope of rank `n` has the flags as vertices, with
//! an edge of color `i` between `i`-adjacent flags. Its colorful polytope is
//! the flag-adjacency polytope.

use serde::Serialize;

use crate::autgroup::color_respecting_group;
use crate::colorful::{build_poset, ColorfulPolytope};
use crate::ecgraph::EdgeColoredGraph;
use crate::error::Result;
use crate::perm::{Perm, PermGroup};
use crate::poset::{dualities, poset_automorphisms, ChainFlag, FlagSystem, RankedPoset};
use crate::Budget;

/// A flag graph with the flag behind each vertex.
#[derive(Debug, Clone)]
pub struct FlagGraph {
    pub graph: EdgeColoredGraph,
    pub system: FlagSystem,
}

impl FlagGraph {
    pub fn flag(&self, v: usize) -> &ChainFlag {
        &self.system.flags[v]
    }
}

/// The flag graph. Vertex `k` is the `k`-th flag in lexicographic order and
/// colors are named `0..n`.
pub fn flag_graph(p: &RankedPoset, budget: &Budget) -> Result<FlagGraph> {
    let system = FlagSystem::new(p, budget.max_flags)?;
    let table: Vec<Vec<usize>> = (0..system.len())
        .map(|f| (0..p.rank()).map(|i| system.adjacent[i][f]).collect())
        .collect();
    let names = (0..system.len()).map(|i| i.to_string()).collect();
    let colors = (0..p.rank()).map(|i| i.to_string()).collect();
    let graph = EdgeColoredGraph::from_neighbor_table(names, colors, &table)?;
    Ok(FlagGraph { graph, system })
}

/// The colorful polytope of the flag graph.
pub fn flag_adjacency_polytope(p: &RankedPoset, budget: &Budget) -> Result<ColorfulPolytope> {
    build_poset(&flag_graph(p, budget)?.graph, budget)
}

/// Whether no face layer graph between consecutive ranks `i`, `i + 1`
/// (`0 <= i <= n - 2`) is complete bipartite.
pub fn layer_hypothesis(p: &RankedPoset) -> bool {
    (0..p.rank().saturating_sub(1)).all(|i| !p.face_layer_graph(i).is_complete_bipartite())
}

/// The group of automorphisms and dualities acting on flags, compared with
/// the color-respecting group of the flag graph.
#[derive(Debug, Clone, Serialize)]
pub struct ExtendedGroupReport {
    pub automorphisms: usize,
    pub dualities: usize,
    pub extended_order: u128,
    pub flag_graph_order: usize,
    /// Order of the color-preserving part of the flag graph's group.
    pub flag_graph_preserving_order: usize,
    pub hypothesis: bool,
    /// `extended_order == flag_graph_order`.
    pub equal: bool,
    /// Every generator of the extended group is a color-respecting
    /// automorphism of the flag graph, with dualities reversing colors.
    pub acts_on_flag_graph: bool,
}

/// Computes `Γ̄(P)` as a permutation group on flags by brute force and
/// `Γ_c` of the flag graph by the colored search.
pub fn extended_group(p: &RankedPoset, budget: &Budget) -> Result<(PermGroup, ExtendedGroupReport)> {
    let fg = flag_graph(p, budget)?;
    let auts = poset_automorphisms(p, budget.max_oracle_faces)?;
    let duals = dualities(p, budget.max_oracle_faces)?;
    let nflags = fg.system.len();

    let act = |map: &[usize], reverse: bool| -> Perm {
        let images = fg
            .system
            .flags
            .iter()
            .map(|f| {
                let mut chain: Vec<usize> = f.0.iter().map(|&x| map[x]).collect();
                if reverse {
                    chain.reverse();
                }
                fg.system.index_of(&ChainFlag(chain)).expect("image of a flag is a flag")
            })
            .collect();
        Perm::from_images(images).expect("induced action is a bijection")
    };
    let mut perms: Vec<Perm> = auts
        .elements
        .iter()
        .map(|a| act(&a.images().collect::<Vec<_>>(), false))
        .collect();
    let dual_perms: Vec<Perm> = duals.iter().map(|d| act(d, true)).collect();
    perms.extend(dual_perms.iter().cloned());
    let group = PermGroup::from_elements(nflags, &perms);

    let n = p.rank();
    let g = &fg.graph;
    let preserves = |m: &Perm, colors: &dyn Fn(usize) -> usize| {
        g.edges()
            .into_iter()
            .all(|(u, v, c)| g.neighbor(m.apply(u), colors(c)) == m.apply(v))
    };
    let acts_on_flag_graph = perms[..auts.elements.len()].iter().all(|m| preserves(m, &|c| c))
        && dual_perms.iter().all(|m| preserves(m, &|c| n - 1 - c));

    let gc = color_respecting_group(g, budget)?;
    let preserving = gc.kappa().kernel_order;
    let extended_order = group.order();
    let report = ExtendedGroupReport {
        automorphisms: auts.elements.len(),
        dualities: duals.len(),
        extended_order,
        flag_graph_order: gc.order(),
        flag_graph_preserving_order: preserving,
        hypothesis: layer_hypothesis(p),
        equal: extended_order == gc.order() as u128,
        acts_on_flag_graph,
    };
    Ok((group, report))
}
