mod common;

use std::collections::BTreeSet;

use colorpoly::autgroup::{color_respecting_group, colored_isomorphism, graph_automorphisms, lifted_group};
use colorpoly::cayley::{cayley_graph, check_semidirect, GenGroup};
use colorpoly::colorful::{build_poset, cflag_adjacent, flag_set, two_faces};
use colorpoly::ecgraph::{find_one_factorization, parse_graph, ColorSet, EdgeColoredGraph, SimpleGraph};
use colorpoly::flagpoly::flag_graph;
use colorpoly::monodromy::{compare_regularity, monodromy_group};
use colorpoly::poset::{poset_automorphisms, validate_polytope, FlagSystem};
use colorpoly::topology::classify_surface;
use colorpoly::Budget;
use common::{face_counts, factorial, neighbor_table, random_colored_graph, sample_graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_from_seed(seed: u64, max_vertices: usize, max_colors: usize) -> EdgeColoredGraph {
    sample_graph(&mut ChaCha8Rng::seed_from_u64(seed), max_vertices, max_colors)
}

fn small() -> impl Strategy<Value = EdgeColoredGraph> {
    any::<u64>().prop_map(|s| graph_from_seed(s, 16, 4))
}

fn tiny() -> impl Strategy<Value = EdgeColoredGraph> {
    any::<u64>().prop_map(|s| graph_from_seed(s, 10, 3))
}

fn rank_three() -> impl Strategy<Value = EdgeColoredGraph> {
    any::<u64>().prop_map(|s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        loop {
            let n = 2 * rng.gen_range(2..=12);
            if let Some(g) = random_colored_graph(&mut rng, n, 3) {
                return g;
            }
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn neighbor_maps_are_perfect_matchings(g in small()) {
        for c in 0..g.r() {
            for v in 0..g.vertex_count() {
                let w = g.neighbor(v, c);
                prop_assert_ne!(w, v);
                prop_assert_eq!(g.neighbor(w, c), v);
                prop_assert_eq!(g.edge_color(v, w), Some(c));
            }
        }
    }

    #[test]
    fn deleted_color_components_partition_vertices(g in small()) {
        for b in 0..g.r() {
            let mut covered = vec![0usize; g.vertex_count()];
            for sub in g.delete_color(b) {
                prop_assert_eq!(sub.graph.r(), g.r() - 1);
                prop_assert!(!sub.color_map.contains(&b));
                for &v in &sub.vertex_map {
                    covered[v] += 1;
                }
            }
            prop_assert!(covered.iter().all(|&k| k == 1));
        }
    }

    #[test]
    fn partitions_are_monotone(g in small()) {
        for c in ColorSet::all_subsets(g.r()) {
            let fine = g.components_under(c);
            for extra in 0..g.r() {
                let coarse = g.components_under(c.with(extra));
                prop_assert!(fine.refines(&coarse));
            }
        }
    }

    #[test]
    fn factorization_output_reparses(g in small()) {
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        let s = SimpleGraph::new(g.vertex_names().to_vec(), &edges).unwrap();
        let f = find_one_factorization(&s).unwrap();
        let back = parse_graph(&f.to_text()).unwrap();
        prop_assert_eq!(back.edge_count(), g.edge_count());
        prop_assert_eq!(back.r(), g.r());
    }

    #[test]
    fn built_polytopes_are_polytopes(g in small()) {
        let p = build_poset(&g, &Budget::default()).unwrap();
        let report = validate_polytope(&p.poset);
        prop_assert!(report.is_polytope(), "{:?}", report.failures);
        prop_assert_eq!(p.poset.flag_count(), (g.vertex_count() * factorial(g.r())) as u128);
        prop_assert_eq!(p.poset.f_vector(), face_counts(&g)[..].to_vec());
        let dd = p.poset.dual().dual();
        let identity: Vec<usize> = (0..p.poset.face_count()).collect();
        prop_assert!(p.poset.is_isomorphism_onto(&dd, &identity));
    }

    #[test]
    fn flag_adjacency_is_fixed_point_free_involution(g in small()) {
        let p = build_poset(&g, &Budget::default()).unwrap();
        let fs = FlagSystem::new(&p.poset, usize::MAX).unwrap();
        for row in &fs.adjacent {
            for (f, &h) in row.iter().enumerate() {
                prop_assert_ne!(f, h);
                prop_assert_eq!(row[h], f);
            }
        }
    }

    #[test]
    fn skeleton_is_the_graph(g in small()) {
        let p = build_poset(&g, &Budget::default()).unwrap();
        let t = neighbor_table(&g);
        let vertex_face = |v: usize| p.face_id(ColorSet::default(), v);
        let mut skeleton = BTreeSet::new();
        for e in p.poset.faces_of_rank(1) {
            let d = p.poset.down(e);
            prop_assert_eq!(d.len(), 2);
            skeleton.insert((d[0].min(d[1]), d[0].max(d[1])));
        }
        let mut edges = BTreeSet::new();
        for (u, row) in t.iter().enumerate() {
            for &w in row {
                let (a, b) = (vertex_face(u), vertex_face(w));
                edges.insert((a.min(b), a.max(b)));
            }
        }
        prop_assert_eq!(skeleton, edges);
    }

    #[test]
    fn two_faces_are_even_alternating_cycles(g in small()) {
        let t = neighbor_table(&g);
        for f in two_faces(&g) {
            prop_assert!(f.size >= 4 && f.size % 2 == 0);
            let (i, j) = f.colors;
            let mut v = f.rep;
            let mut steps = 0;
            loop {
                v = t[t[v][i]][j];
                steps += 2;
                if v == f.rep {
                    break;
                }
            }
            prop_assert_eq!(steps, f.size);
        }
    }

    #[test]
    fn color_flag_adjacency_matches_chains(g in small()) {
        let p = build_poset(&g, &Budget::default()).unwrap();
        for cf in flag_set(&g).take(200) {
            let chain = p.chain_flag(&cf);
            prop_assert_eq!(&p.color_flag(&chain), &cf);
            for j in 0..g.r() {
                let via_colors = p.chain_flag(&cflag_adjacent(&g, &cf, j));
                prop_assert_eq!(p.poset.flag_adjacent(&chain, j).unwrap(), via_colors);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_inclusions_and_kappa(g in tiny()) {
        let group = color_respecting_group(&g, &Budget::default()).unwrap();
        let all: BTreeSet<_> = graph_automorphisms(&g).unwrap().into_iter().collect();
        let elements = group.elements();
        for a in &elements {
            prop_assert!(a.respects(&g));
            prop_assert!(all.contains(&a.vertex_map));
        }
        prop_assert_eq!(group.color_preserving().len(), group.kappa().kernel_order);
        for a in elements.iter().take(12) {
            for b in elements.iter().take(12) {
                let ab = a.compose(b);
                prop_assert_eq!(&ab.color_perm, &a.color_perm.compose(&b.color_perm));
                prop_assert!(ab.respects(&g));
            }
        }
        // an element fixing a vertex and every color is the identity
        let fixing = elements
            .iter()
            .filter(|a| a.vertex_map.apply(0) == 0 && a.color_perm.is_identity())
            .count();
        prop_assert_eq!(fixing, 1);
    }

    #[test]
    fn lifted_group_is_the_poset_group(g in tiny()) {
        let budget = Budget::default();
        let p = build_poset(&g, &budget).unwrap();
        prop_assume!(p.poset.face_count() <= 1000);
        let group = color_respecting_group(&g, &budget).unwrap();
        let lifted = lifted_group(&group, &p);
        let mut brute = poset_automorphisms(&p.poset, budget.max_oracle_faces).unwrap().elements;
        brute.sort();
        prop_assert_eq!(lifted, brute);
    }

    #[test]
    fn flag_graph_groups(g in tiny()) {
        let budget = Budget::default();
        let p = build_poset(&g, &budget).unwrap().poset;
        let fg = flag_graph(&p, &budget).unwrap();
        let n = p.rank();
        let preserving = color_respecting_group(&fg.graph, &budget).unwrap().kappa().kernel_order;
        prop_assert_eq!(preserving, poset_automorphisms(&p, budget.max_oracle_faces).unwrap().order());
        for v in 0..fg.graph.vertex_count() {
            for i in 0..n {
                for j in i + 2..n {
                    prop_assert_eq!(fg.graph.bicolored_cycle_len(v, i, j), 4);
                }
            }
        }
        let reversed: Vec<usize> = (0..n).rev().collect();
        let dual_fg = flag_graph(&p.dual(), &budget).unwrap();
        prop_assert!(colored_isomorphism(&dual_fg.graph, &fg.graph, &reversed).is_some());
    }

    #[test]
    fn monodromy_regularity_conditions_agree(g in tiny()) {
        let budget = Budget::default();
        let p = build_poset(&g, &budget).unwrap().poset;
        let mon = monodromy_group(&p, &budget).unwrap();
        prop_assert!(mon.group.is_transitive());
        prop_assume!(mon.order() <= 20_000);
        let cmp = compare_regularity(&p, &budget).unwrap();
        prop_assert!(cmp.agree(), "{:?}", cmp);
    }

    #[test]
    fn surfaces_of_colorful_polyhedra(g in rank_three()) {
        let p = build_poset(&g, &Budget::default()).unwrap().poset;
        let s = classify_surface(&p).unwrap();
        let e = s.f_vector[1];
        prop_assert_eq!(s.face_sizes.iter().sum::<usize>(), 2 * e);
        prop_assert_eq!(s.vertex_degrees.iter().sum::<usize>(), 2 * e);
        prop_assert!(s.face_sizes.iter().all(|q| q % 2 == 0));
        prop_assert_eq!(s.euler, s.f_vector[0] as i64 - e as i64 + s.f_vector[2] as i64);
        prop_assert_eq!(s.orientable, s.surface == "sphere" || s.surface == "torus" || s.surface.starts_with("genus-"));
    }
}

/// Connected graphs on `p` vertices as transposition sets.
fn connected_graph(p: usize, mask: u32) -> Option<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v))).collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    let g = SimpleGraph::new((0..p).map(|i| i.to_string()).collect(), &edges).ok()?;
    g.is_connected().then_some(g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cayley_graphs_of_transposition_groups(p in 2usize..=4, mask in any::<u32>()) {
        let Some(tg) = connected_graph(p, mask) else {
            return Ok(());
        };
        let gg = GenGroup::symmetric_from_graph(&tg).unwrap();
        let budget = Budget::default();
        let cg = cayley_graph(&gg, &budget).unwrap();
        let reparsed = parse_graph(&cg.graph.to_text()).unwrap();
        prop_assert_eq!(reparsed.vertex_count(), factorial(p));
        prop_assert!(validate_polytope(&build_poset(&cg.graph, &budget).unwrap().poset).is_polytope());
        // right multiplications act sharply transitively and preserve colors
        let mut images = BTreeSet::new();
        for g in &cg.elements {
            let m = cg.right_multiplication(g);
            for (u, v, c) in cg.graph.edges() {
                prop_assert_eq!(cg.graph.neighbor(m.apply(u), c), m.apply(v));
            }
            images.insert(m.apply(0));
        }
        prop_assert_eq!(images.len(), cg.elements.len());
        let report = check_semidirect(&gg, &budget).unwrap();
        prop_assert!(report.holds(), "{:?}", report);
        // conjugation by a graph automorphism is faithful once p >= 3
        let expected = if p >= 3 { common::brute_graph_automorphisms(&tg) } else { 1 };
        prop_assert_eq!(report.aut_order, expected);
    }
}

#[test]
fn path_graphicahedra_satisfy_braid_relations() {
    let budget = Budget::default();
    for q in 1..=4usize {
        let edges: Vec<(usize, usize)> = (0..q).map(|i| (i, i + 1)).collect();
        let tg = SimpleGraph::new((0..=q).map(|i| i.to_string()).collect(), &edges).unwrap();
        let cg = cayley_graph(&GenGroup::symmetric_from_graph(&tg).unwrap(), &budget).unwrap();
        for v in 0..cg.graph.vertex_count() {
            for i in 0..q {
                for j in i + 1..q {
                    let want = if j == i + 1 { 6 } else { 4 };
                    assert_eq!(cg.graph.bicolored_cycle_len(v, i, j), want);
                }
            }
        }
    }
}

#[test]
fn randomized_suite_hundred_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let g = sample_graph(&mut rng, 48, 4);
        let p = build_poset(&g, &Budget::default()).unwrap();
        assert!(validate_polytope(&p.poset).is_polytope());
        assert_eq!(p.poset.flag_count(), (g.vertex_count() * factorial(g.r())) as u128);
        assert!(two_faces(&g).iter().all(|f| f.size % 2 == 0));
    }
}
