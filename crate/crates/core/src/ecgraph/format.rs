//! Colored edge list text format and DOT export.
//!
//! One edge per line, `<u> <v> <color>`; `#` starts a comment. Vertex and
//! color tokens are arbitrary non-whitespace strings and get dense ids in
//! order of first appearance.

use std::collections::HashMap;
use std::fmt::Write;

use super::{EdgeColoredGraph, MAX_COLORS};
use crate::error::{Error, Result};

/// Strips a `#` comment and splits the rest into tokens.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    body.split_whitespace().collect()
}

/// Interns names to dense ids in first-appearance order.
#[derive(Default)]
pub(crate) struct Interner {
    pub names: Vec<String>,
    ids: HashMap<String, usize>,
}

impl Interner {
    pub fn id(&mut self, name: &str) -> usize {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }
}

/// Parses and validates a colored edge list.
pub fn parse_graph(text: &str) -> Result<EdgeColoredGraph> {
    let mut vertices = Interner::default();
    let mut colors = Interner::default();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 3 {
            return Err(Error::MalformedLine {
                line: lineno + 1,
                detail: format!("expected `<u> <v> <color>`, found {} tokens", toks.len()),
            });
        }
        let u = vertices.id(toks[0]);
        let v = vertices.id(toks[1]);
        let c = colors.id(toks[2]);
        if colors.names.len() > MAX_COLORS {
            return Err(Error::TooManyColors {
                colors: colors.names.len(),
            });
        }
        edges.push((u, v, c));
    }
    if edges.is_empty() {
        return Err(Error::MalformedLine {
            line: 0,
            detail: "no edges".into(),
        });
    }
    EdgeColoredGraph::from_edges(vertices.names, colors.names, &edges)
}

impl EdgeColoredGraph {
    /// Colored edge list, edges sorted by dense vertex ids. Parsing the output
    /// gives back the same graph up to the order of first appearance.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (u, v, c) in self.edges() {
            writeln!(
                out,
                "{} {} {}",
                self.vertex_name(u),
                self.vertex_name(v),
                self.color_name(c)
            )
            .unwrap();
        }
        out
    }

    /// Undirected DOT graph with each edge carrying its color name.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            writeln!(out, "  {};", dot_id(self.vertex_name(v))).unwrap();
        }
        for (u, v, c) in self.edges() {
            let name = dot_escape(self.color_name(c));
            writeln!(
                out,
                "  {} -- {} [color=\"{name}\", label=\"{name}\"];",
                dot_id(self.vertex_name(u)),
                dot_id(self.vertex_name(v)),
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", dot_escape(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_parses() {
        let g = parse_graph("1 2 a\n3 4 a\n1 3 b\n2 4 b\n1 4 c\n2 3 c\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.r(), 3);
        assert_eq!(g.vertex_names(), &["1", "2", "3", "4"]);
        assert_eq!(g.color_names(), &["a", "b", "c"]);
    }

    #[test]
    fn segment_parses() {
        let g = parse_graph("1 2 a").unwrap();
        assert_eq!((g.vertex_count(), g.r()), (2, 1));
    }

    #[test]
    fn triangle_is_not_regular() {
        let err = parse_graph("1 2 a\n2 3 b\n1 3 c\n").unwrap_err();
        assert!(matches!(err, Error::NotRegular { degree: 2, colors: 3, .. }), "{err:?}");
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# segment\n\n1 2 a # the edge\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn error_kinds() {
        assert_eq!(parse_graph("1 2").unwrap_err().code(), "MalformedLine");
        assert_eq!(parse_graph("").unwrap_err().code(), "MalformedLine");
        assert_eq!(parse_graph("1 1 a").unwrap_err().code(), "LoopEdge");
        assert_eq!(parse_graph("1 2 a\n2 1 b").unwrap_err().code(), "DuplicateEdge");
        assert_eq!(parse_graph("1 2 a\n3 4 a").unwrap_err().code(), "NotConnected");
        let err = parse_graph("1 2 a\n3 4 b\n1 3 b\n2 4 b\n1 4 c\n2 3 c\n").unwrap_err();
        assert_eq!(err.code(), "NotProperlyColored");
        assert_eq!(err.to_string(), "vertex 3 has colors {b,b,c}");
        let many: String = (0..65).map(|i| format!("u{i} v{i} k{i}\n")).collect();
        assert_eq!(parse_graph(&many).unwrap_err().code(), "TooManyColors");
    }

    #[test]
    fn text_round_trip() {
        let g = parse_graph("x y p\nz w p\nx z q\ny w q\n").unwrap();
        let again = parse_graph(&g.to_text()).unwrap();
        assert_eq!(again.to_text(), g.to_text());
        assert_eq!(again.edges(), g.edges());
    }

    #[test]
    fn dot_export() {
        let g = parse_graph("1 2 a").unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("\"1\" -- \"2\" [color=\"a\", label=\"a\"];"));
    }
}
