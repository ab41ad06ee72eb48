//! Uncolored simple graphs: inputs to the 1-factorization search and to the
//! graphicahedron construction.

use std::collections::HashSet;

use super::format::{tokens, Interner};
use crate::error::{Error, Result};

/// A finite simple graph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    names: Vec<String>,
    /// Edges `(u, v)` with `u < v`, in input order.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut seen = HashSet::new();
        let mut adj = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range");
            if u == v {
                return Err(Error::LoopEdge {
                    vertex: names[u].clone(),
                });
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge {
                    u: names[u].clone(),
                    v: names[v].clone(),
                });
            }
            adj[u].push(v);
            adj[v].push(u);
            out.push(e);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            names,
            edges: out,
            adj,
        })
    }

    /// Parses `<u> <v>` lines; a line holding a single token declares an
    /// isolated vertex.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Interner::default();
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let toks = tokens(line);
            match toks.len() {
                0 => {}
                1 => {
                    names.id(toks[0]);
                }
                2 => {
                    let u = names.id(toks[0]);
                    let v = names.id(toks[1]);
                    edges.push((u, v));
                }
                k => {
                    return Err(Error::MalformedLine {
                        line: lineno + 1,
                        detail: format!("expected `<u> <v>`, found {k} tokens"),
                    })
                }
            }
        }
        SimpleGraph::new(names.names, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }
}
