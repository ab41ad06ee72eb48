//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use colorpoly::ecgraph::{parse_graph, EdgeColoredGraph, SimpleGraph};
use colorpoly::poset::{parse_polytope, RankedPoset};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p
}

pub fn graph(name: &str) -> EdgeColoredGraph {
    parse_graph(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

pub fn simple(name: &str) -> SimpleGraph {
    SimpleGraph::parse(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

pub fn polytope(name: &str) -> RankedPoset {
    parse_polytope(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

/// A random connected properly colored `r`-regular simple graph on `n`
/// vertices (`n` even), built as a union of `r` random perfect matchings.
/// Returns `None` when the sample has a repeated edge or is disconnected.
pub fn random_colored_graph<R: Rng>(rng: &mut R, n: usize, r: usize) -> Option<EdgeColoredGraph> {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for c in 0..r {
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        for pair in vs.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if !seen.insert((u, v)) {
                return None;
            }
            edges.push((u, v, c));
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    let colors = (0..r).map(|c| ((b'a' + c as u8) as char).to_string()).collect();
    EdgeColoredGraph::from_edges(names, colors, &edges).ok()
}

/// Keeps sampling until a valid graph comes out.
pub fn sample_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_colors: usize) -> EdgeColoredGraph {
    loop {
        let r = rng.gen_range(1..=max_colors);
        let n = 2 * rng.gen_range(1..=max_vertices / 2);
        if let Some(g) = random_colored_graph(rng, n, r) {
            return g;
        }
    }
}

/// Neighbor table read off the edge list, independent of the library's own
/// adjacency.
pub fn neighbor_table(g: &EdgeColoredGraph) -> Vec<Vec<usize>> {
    let mut t = vec![vec![usize::MAX; g.r()]; g.vertex_count()];
    for (u, v, c) in g.edges() {
        t[u][c] = v;
        t[v][c] = u;
    }
    t
}

/// Classes of vertices joined by paths in colors of `mask`, each sorted,
/// listed by minimum vertex.
pub fn classes(t: &[Vec<usize>], mask: u64) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut class = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (c, &w) in t[u].iter().enumerate() {
                if mask >> c & 1 == 1 && !seen[w] {
                    seen[w] = true;
                    class.push(w);
                    queue.push_back(w);
                }
            }
        }
        class.sort_unstable();
        out.push(class);
    }
    out
}

/// Face counts per rank `0..=r` by counting classes for every color subset.
pub fn face_counts(g: &EdgeColoredGraph) -> Vec<usize> {
    let t = neighbor_table(g);
    let r = g.r();
    let mut f = vec![0; r + 1];
    for mask in 0u64..(1 << r) {
        f[mask.count_ones() as usize] += classes(&t, mask).len();
    }
    f
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Every color-respecting automorphism as `(vertex images, color images)`,
/// by trying every vertex permutation. Only for tiny graphs.
pub fn brute_color_respecting(g: &EdgeColoredGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let t = neighbor_table(g);
    let edges = g.edges();
    let mut out = Vec::new();
    for p in permutations(g.vertex_count()) {
        let mut colors = vec![usize::MAX; g.r()];
        let ok = edges.iter().all(|&(u, v, c)| {
            let (a, b) = (p[u], p[v]);
            match t[a].iter().position(|&w| w == b) {
                Some(d) if colors[c] == usize::MAX || colors[c] == d => {
                    colors[c] = d;
                    true
                }
                _ => false,
            }
        });
        let distinct: BTreeSet<usize> = colors.iter().copied().collect();
        if ok && distinct.len() == g.r() {
            out.push((p, colors));
        }
    }
    out
}

/// Number of orbits on flags `(vertex, color order)` under the given
/// automorphisms.
pub fn brute_flag_orbits(g: &EdgeColoredGraph, auts: &[(Vec<usize>, Vec<usize>)]) -> usize {
    let orders = permutations(g.r());
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut orbits = 0;
    for v in 0..g.vertex_count() {
        for o in &orders {
            if seen.contains(&(v, o.clone())) {
                continue;
            }
            orbits += 1;
            for (vm, cm) in auts {
                seen.insert((vm[v], o.iter().map(|&c| cm[c]).collect()));
            }
        }
    }
    orbits
}

/// Automorphisms of a simple graph by trying every vertex permutation.
pub fn brute_graph_automorphisms(g: &SimpleGraph) -> usize {
    let edges: HashSet<(usize, usize)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    permutations(g.vertex_count())
        .into_iter()
        .filter(|p| {
            edges
                .iter()
                .all(|&(u, v)| edges.contains(&(p[u].min(p[v]), p[u].max(p[v]))))
        })
        .count()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
