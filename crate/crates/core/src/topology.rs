//! Rank-3 polytopes as maps on closed surfaces.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{FlagSystem, RankedPoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub f_vector: [usize; 3],
    pub euler: i64,
    /// Decided by bipartiteness of the flag graph.
    pub orientable: bool,
    /// Face sizes, sorted.
    pub face_sizes: Vec<usize>,
    /// Vertex degrees, sorted.
    pub vertex_degrees: Vec<usize>,
    pub surface: String,
}

impl SurfaceReport {
    /// `size^count` pairs, ascending.
    pub fn face_profile(&self) -> Vec<(usize, usize)> {
        profile(&self.face_sizes)
    }
}

fn profile(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in sorted {
        match out.last_mut() {
            Some((size, count)) if *size == s => *count += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

/// Name of the closed connected surface with Euler characteristic `euler`.
pub fn surface_name(euler: i64, orientable: bool) -> String {
    if orientable {
        match euler {
            2 => "sphere".into(),
            0 => "torus".into(),
            _ => format!("genus-{}", (2 - euler) / 2),
        }
    } else {
        match euler {
            1 => "projective-plane".into(),
            0 => "klein-bottle".into(),
            _ => format!("nonorientable-genus-{}", 2 - euler),
        }
    }
}

fn require_rank_three(p: &RankedPoset) -> Result<()> {
    if p.rank() != 3 {
        return Err(Error::NotRankThree { rank: p.rank() });
    }
    Ok(())
}

/// Euler characteristic, orientability and surface name of a rank-3
/// polytope. Orientability is computed twice, from the flag graph and by
/// orienting faces coherently, and the two must agree.
pub fn classify_surface(p: &RankedPoset) -> Result<SurfaceReport> {
    require_rank_three(p)?;
    for e in p.faces_of_rank(1) {
        if p.down(e).len() != 2 || p.up(e).len() != 2 {
            return Err(Error::NotAPolytope(format!(
                "edge {} has {} vertices and {} faces",
                p.index_in_rank(e),
                p.down(e).len(),
                p.up(e).len()
            )));
        }
    }
    let f = p.f_vector();
    let f_vector = [f[0], f[1], f[2]];
    let euler = f[0] as i64 - f[1] as i64 + f[2] as i64;

    let by_flags = flag_graph_bipartite(p)?;
    let by_faces = coherent_face_orientation(p)?;
    if by_flags != by_faces {
        return Err(Error::InvariantViolated(format!(
            "flag graph says orientable={by_flags}, face orientation says {by_faces}"
        )));
    }
    let mut face_sizes: Vec<usize> = p.faces_of_rank(2).map(|x| p.down(x).len()).collect();
    face_sizes.sort_unstable();
    let mut vertex_degrees: Vec<usize> = p.faces_of_rank(0).map(|x| p.up(x).len()).collect();
    vertex_degrees.sort_unstable();
    Ok(SurfaceReport {
        f_vector,
        euler,
        orientable: by_flags,
        face_sizes,
        vertex_degrees,
        surface: surface_name(euler, by_flags),
    })
}

fn flag_graph_bipartite(p: &RankedPoset) -> Result<bool> {
    let fs = FlagSystem::new(p, usize::MAX)?;
    let mut side = vec![u8::MAX; fs.len()];
    for start in 0..fs.len() {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for row in &fs.adjacent {
                let g = row[f];
                if side[g] == u8::MAX {
                    side[g] = 1 - side[f];
                    queue.push_back(g);
                } else if side[g] == side[f] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Walks the boundary of a 2-face and returns its edges with the direction
/// each is traversed in, as `(edge, from, to)`.
fn boundary_walk(p: &RankedPoset, face: usize) -> Result<Vec<(usize, usize, usize)>> {
    let edges = p.down(face);
    let first = edges[0];
    let start = p.down(first)[0];
    let mut walk = Vec::with_capacity(edges.len());
    let (mut edge, mut at) = (first, start);
    loop {
        let ends = p.down(edge);
        let next = if ends[0] == at { ends[1] } else { ends[0] };
        walk.push((edge, at, next));
        at = next;
        let others: Vec<usize> = p.up(at).iter().copied().filter(|&e| e != edge && edges.contains(&e)).collect();
        if others.len() != 1 {
            return Err(Error::NotAPolytope(format!(
                "face {} is not bounded by a cycle",
                p.index_in_rank(face)
            )));
        }
        edge = others[0];
        if edge == first {
            break;
        }
        if walk.len() > edges.len() {
            return Err(Error::NotAPolytope("boundary walk does not close".into()));
        }
    }
    if walk.len() != edges.len() {
        return Err(Error::NotAPolytope(format!(
            "face {} has more than one boundary cycle",
            p.index_in_rank(face)
        )));
    }
    Ok(walk)
}

/// Tries to orient every 2-face so that each edge is traversed in opposite
/// directions by its two faces.
fn coherent_face_orientation(p: &RankedPoset) -> Result<bool> {
    let faces: Vec<usize> = p.faces_of_rank(2).collect();
    let base = faces.first().copied().unwrap_or(0);
    let walks: Vec<Vec<(usize, usize, usize)>> =
        faces.iter().map(|&f| boundary_walk(p, f)).collect::<Result<_>>()?;
    // direction of edge e in face f's walk
    let direction = |f: usize, e: usize| -> (usize, usize) {
        let &(_, a, b) = walks[f - base].iter().find(|w| w.0 == e).unwrap();
        (a, b)
    };
    let mut sign = vec![0i8; faces.len()];
    for start in 0..faces.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([faces[start]]);
        while let Some(f) = queue.pop_front() {
            for &(e, a, b) in &walks[f - base] {
                let other = *p.up(e).iter().find(|&&g| g != f).unwrap();
                let (c, d) = direction(other, e);
                // same traversal direction needs opposite signs
                let same = (a, b) == (c, d);
                let want = if same { -sign[f - base] } else { sign[f - base] };
                let s = &mut sign[other - base];
                if *s == 0 {
                    *s = want;
                    queue.push_back(other);
                } else if *s != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The Schläfli type `{q, k}` when every face is a `q`-gon and every vertex
/// lies in `k` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SchlafliType {
    Regular { q: usize, k: usize },
    Irregular {
        faces: Vec<(usize, usize)>,
        vertices: Vec<(usize, usize)>,
    },
}

impl fmt::Display for SchlafliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |prof: &[(usize, usize)]| {
            prof.iter()
                .map(|&(s, c)| if c == 1 { s.to_string() } else { format!("{s}^{c}") })
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            SchlafliType::Regular { q, k } => write!(f, "{{{q},{k}}}"),
            SchlafliType::Irregular { faces, vertices } => {
                write!(f, "irregular faces {{{}}} vertices {{{}}}", join(faces), join(vertices))
            }
        }
    }
}

pub fn schlafli_type(p: &RankedPoset) -> Result<SchlafliType> {
    require_rank_three(p)?;
    let mut sizes: Vec<usize> = p.faces_of_rank(2).map(|x| p.down(x).len()).collect();
    sizes.sort_unstable();
    let mut degrees: Vec<usize> = p.faces_of_rank(0).map(|x| p.up(x).len()).collect();
    degrees.sort_unstable();
    let faces = profile(&sizes);
    let vertices = profile(&degrees);
    if faces.len() == 1 && vertices.len() == 1 {
        Ok(SchlafliType::Regular {
            q: faces[0].0,
            k: vertices[0].0,
        })
    } else {
        Ok(SchlafliType::Irregular { faces, vertices })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorful::build_poset;
    use crate::ecgraph::parse_graph;
    use crate::Budget;

    fn built(text: &str) -> RankedPoset {
        build_poset(&parse_graph(text).unwrap(), &Budget::default()).unwrap().poset
    }

    #[test]
    fn hemicube_is_projective_plane() {
        let p = built("1 2 a\n3 4 a\n1 3 b\n2 4 b\n1 4 c\n2 3 c\n");
        let r = classify_surface(&p).unwrap();
        assert_eq!((r.f_vector, r.euler, r.orientable), ([4, 6, 3], 1, false));
        assert_eq!(r.surface, "projective-plane");
        assert_eq!(schlafli_type(&p).unwrap(), SchlafliType::Regular { q: 4, k: 3 });
    }

    #[test]
    fn tetrahedron_is_sphere() {
        let p = RankedPoset::from_polyhedron(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let r = classify_surface(&p).unwrap();
        assert_eq!((r.euler, r.orientable, r.surface.as_str()), (2, true, "sphere"));
        assert_eq!(schlafli_type(&p).unwrap().to_string(), "{3,3}");
    }

    #[test]
    fn names() {
        assert_eq!(surface_name(-4, true), "genus-3");
        assert_eq!(surface_name(0, false), "klein-bottle");
        assert_eq!(surface_name(-1, false), "nonorientable-genus-3");
    }

    #[test]
    fn rank_must_be_three() {
        let err = classify_surface(&RankedPoset::polygon(4)).unwrap_err();
        assert_eq!(err.code(), "NotRankThree");
        assert_eq!(schlafli_type(&RankedPoset::segment()).unwrap_err().code(), "NotRankThree");
    }

    #[test]
    fn irregular_profile() {
        let t = SchlafliType::Irregular {
            faces: vec![(4, 2), (8, 2)],
            vertices: vec![(3, 8)],
        };
        assert_eq!(t.to_string(), "irregular faces {4^2,8^2} vertices {3^8}");
    }
}
