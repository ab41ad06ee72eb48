//! Plain-text serialization of ranked posets.
//!
//! ```text
//! rank 2
//! f 0 0 :
//! f 0 1 :
//! f 0 2 :
//! f 1 0 : 0 1
//! f 1 1 : 1 2
//! f 1 2 : 0 2
//! f 2 0 : 0 1 2
//! ```
//!
//! Each `f <rank> <index> : <covered>` line lists the indices, within the
//! rank below, of the faces covered. The face of rank -1 is implicit, so
//! vertex lines have nothing after the colon. Faces appear rank by rank with
//! consecutive indices.

use std::fmt::Write;

use super::RankedPoset;
use crate::ecgraph::format::tokens;
use crate::error::{Error, Result};

impl RankedPoset {
    /// Canonical text form; `parse_polytope` inverts it exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "rank {}", self.n).unwrap();
        for rank in 0..=self.n as isize {
            let below = self.faces_of_rank(rank - 1).start;
            for (index, f) in self.faces_of_rank(rank).enumerate() {
                write!(out, "f {rank} {index} :").unwrap();
                if rank > 0 {
                    for &d in self.down(f) {
                        write!(out, " {}", d - below).unwrap();
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

fn malformed(line: usize, detail: impl Into<String>) -> Error {
    Error::MalformedLine {
        line,
        detail: detail.into(),
    }
}

fn number(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| malformed(line, format!("expected {what}, found `{tok}`")))
}

/// Parses the text form of a ranked poset. Axioms are not checked here; see
/// [`super::validate_polytope`].
pub fn parse_polytope(text: &str) -> Result<RankedPoset> {
    let mut n: Option<usize> = None;
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let Some(rank_n) = n else {
            if toks.len() != 2 || toks[0] != "rank" {
                return Err(malformed(lineno, "expected `rank <n>` header"));
            }
            let r = number(toks[1], lineno, "rank")?;
            n = Some(r);
            levels = vec![Vec::new(); r + 2];
            levels[0].push(Vec::new());
            continue;
        };
        if toks.len() < 4 || toks[0] != "f" || toks[3] != ":" {
            return Err(malformed(lineno, "expected `f <rank> <index> : <covered faces>`"));
        }
        let rank = number(toks[1], lineno, "rank")?;
        let index = number(toks[2], lineno, "face index")?;
        if rank > rank_n {
            return Err(malformed(lineno, format!("rank {rank} exceeds {rank_n}")));
        }
        if levels[rank + 2..].iter().any(|l| !l.is_empty()) {
            return Err(malformed(lineno, "faces must be listed in rank order"));
        }
        if index != levels[rank + 1].len() {
            return Err(malformed(
                lineno,
                format!("expected face index {} at rank {rank}", levels[rank + 1].len()),
            ));
        }
        let covered = toks[4..]
            .iter()
            .map(|t| number(t, lineno, "covered face index"))
            .collect::<Result<Vec<usize>>>()?;
        let covered = if rank == 0 {
            if covered.iter().any(|&c| c != 0) {
                return Err(malformed(lineno, "a vertex can only cover the face of rank -1"));
            }
            vec![0]
        } else {
            covered
        };
        levels[rank + 1].push(covered);
    }
    let Some(n) = n else {
        return Err(malformed(0, "missing `rank <n>` header"));
    };
    RankedPoset::from_levels(n, levels)
}

#[cfg(test)]
mod tests {
    use super::super::tests::cube;
    use super::*;

    #[test]
    fn triangle_text() {
        let t = RankedPoset::polygon(3);
        let text = t.to_text();
        assert_eq!(
            text,
            "rank 2\nf 0 0 :\nf 0 1 :\nf 0 2 :\nf 1 0 : 0 1\nf 1 1 : 1 2\nf 1 2 : 0 2\nf 2 0 : 0 1 2\n"
        );
        assert_eq!(parse_polytope(&text).unwrap(), t);
    }

    #[test]
    fn round_trip_is_exact() {
        for p in [cube(), RankedPoset::segment(), RankedPoset::polygon(6), cube().dual()] {
            let text = p.to_text();
            let again = parse_polytope(&text).unwrap();
            assert_eq!(again, p);
            assert_eq!(again.to_text(), text);
        }
    }

    #[test]
    fn comments_are_ignored() {
        let p = parse_polytope("# segment\nrank 1\nf 0 0 :\nf 0 1 : # second vertex\nf 1 0 : 0 1\n").unwrap();
        assert_eq!(p, RankedPoset::segment());
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(parse_polytope("").unwrap_err().code(), "MalformedLine");
        assert_eq!(parse_polytope("rank x").unwrap_err().code(), "MalformedLine");
        assert_eq!(parse_polytope("rank 1\nf 0 1 :").unwrap_err().code(), "MalformedLine");
        assert_eq!(parse_polytope("rank 1\nf 0 0\n").unwrap_err().code(), "MalformedLine");
        assert_eq!(parse_polytope("rank 1\nf 2 0 : 0\n").unwrap_err().code(), "MalformedLine");
        assert_eq!(
            parse_polytope("rank 1\nf 0 0 :\nf 1 0 : 0 5\n").unwrap_err().code(),
            "MalformedPolytope"
        );
        assert_eq!(
            parse_polytope("rank 1\nf 0 0 :\nf 1 0 : 0\nf 0 1 :\n").unwrap_err().code(),
            "MalformedLine"
        );
    }
}
