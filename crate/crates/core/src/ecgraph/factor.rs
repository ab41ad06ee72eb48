//! 1-factorizations of regular graphs by backtracking.

use std::ops::ControlFlow;

use super::{default_color_name, EdgeColoredGraph, SimpleGraph, MAX_COLORS};
use crate::error::{Error, Result};

/// Checks the preconditions shared by the search entry points and returns the
/// degree `r`.
fn check_input(g: &SimpleGraph) -> Result<usize> {
    let Some(r) = g.regular_degree() else {
        let v = (0..g.vertex_count())
            .find(|&v| g.degree(v) != g.degree(0))
            .unwrap();
        return Err(Error::NotRegular {
            vertex: g.names()[v].clone(),
            degree: g.degree(v),
            colors: g.degree(0),
        });
    };
    if r > MAX_COLORS {
        return Err(Error::TooManyColors { colors: r });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected {
            components: count_components(g),
        });
    }
    Ok(r)
}

fn count_components(g: &SimpleGraph) -> usize {
    let mut uf = crate::perm::UnionFind::new(g.vertex_count());
    for &(u, v) in g.edges() {
        uf.union(u, v);
    }
    uf.classes().len()
}

/// Calls `visit` on every proper `r`-edge-coloring of the connected
/// `r`-regular graph `g`, in a fixed order, until it breaks.
///
/// Edges are colored in lexicographic order; each edge tries the colors free
/// at both endpoints in increasing order. Color names are `a`, `b`, ...
pub fn for_each_one_factorization<F>(g: &SimpleGraph, mut visit: F) -> Result<()>
where
    F: FnMut(&EdgeColoredGraph) -> ControlFlow<()>,
{
    let r = check_input(g)?;
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.sort_unstable();
    let m = edges.len();
    let mut used = vec![0u64; g.vertex_count()];
    let mut color = vec![usize::MAX; m];
    let full: u64 = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    let names: Vec<String> = g.names().to_vec();
    let color_names: Vec<String> = (0..r).map(default_color_name).collect();

    // Explicit stack: `k` is the edge being colored, `color[k]` the color last
    // tried there.
    let mut k = 0usize;
    loop {
        if k == m {
            let colored: Vec<(usize, usize, usize)> =
                edges.iter().zip(&color).map(|(&(u, v), &c)| (u, v, c)).collect();
            let graph = EdgeColoredGraph::from_edges(names.clone(), color_names.clone(), &colored)
                .expect("search only produces proper colorings");
            if visit(&graph).is_break() {
                return Ok(());
            }
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            let (u, v) = edges[k];
            used[u] &= !(1 << color[k]);
            used[v] &= !(1 << color[k]);
        }
        let (u, v) = edges[k];
        let start = if color[k] == usize::MAX { 0 } else { color[k] + 1 };
        let free = full & !(used[u] | used[v]);
        let next = (start..r).find(|&c| free >> c & 1 == 1);
        match next {
            Some(c) => {
                color[k] = c;
                used[u] |= 1 << c;
                used[v] |= 1 << c;
                k += 1;
            }
            None => {
                color[k] = usize::MAX;
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                let (u, v) = edges[k];
                used[u] &= !(1 << color[k]);
                used[v] &= !(1 << color[k]);
            }
        }
    }
}

/// The first proper `r`-edge-coloring in search order, or `Infeasible` when
/// the graph is not 1-factorable.
pub fn find_one_factorization(g: &SimpleGraph) -> Result<EdgeColoredGraph> {
    let mut found = None;
    for_each_one_factorization(g, |c| {
        found = Some(c.clone());
        ControlFlow::Break(())
    })?;
    found.ok_or_else(|| Error::Infeasible("graph has no 1-factorization".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::new((0..10).map(|i| i.to_string()).collect(), &edges).unwrap()
    }

    #[test]
    fn petersen_is_infeasible() {
        let err = find_one_factorization(&petersen()).unwrap_err();
        assert_eq!(err.code(), "Infeasible");
    }

    #[test]
    fn k4_has_a_unique_factorization_up_to_names() {
        let k4 = SimpleGraph::parse("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
        let g = find_one_factorization(&k4).unwrap();
        assert_eq!(g.r(), 3);
        // every factorization found is the same three matchings
        let mut matchings = std::collections::BTreeSet::new();
        for_each_one_factorization(&k4, |c| {
            let mut classes: Vec<Vec<(usize, usize)>> = (0..3)
                .map(|col| {
                    c.edges()
                        .into_iter()
                        .filter(|e| e.2 == col)
                        .map(|e| (e.0, e.1))
                        .collect()
                })
                .collect();
            classes.sort();
            matchings.insert(classes);
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(matchings.len(), 1);
    }

    #[test]
    fn even_cycle_alternates() {
        let c6 = SimpleGraph::parse("1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n").unwrap();
        let g = find_one_factorization(&c6).unwrap();
        assert_eq!(g.r(), 2);
        assert_eq!(g.bicolored_cycle_len(0, 0, 1), 6);
    }

    #[test]
    fn odd_cycle_is_infeasible() {
        let c5 = SimpleGraph::parse("1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
        assert_eq!(find_one_factorization(&c5).unwrap_err().code(), "Infeasible");
    }

    #[test]
    fn output_revalidates() {
        let k33 = SimpleGraph::parse("1 4\n1 5\n1 6\n2 4\n2 5\n2 6\n3 4\n3 5\n3 6\n").unwrap();
        let g = find_one_factorization(&k33).unwrap();
        let again = super::super::parse_graph(&g.to_text()).unwrap();
        assert_eq!(again.edge_count(), 9);
    }

    #[test]
    fn rejects_irregular_input() {
        let path = SimpleGraph::parse("1 2\n2 3\n").unwrap();
        assert_eq!(find_one_factorization(&path).unwrap_err().code(), "NotRegular");
    }
}
