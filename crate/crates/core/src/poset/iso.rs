//! Brute-force isomorphism search between ranked posets.
//!
//! This knows nothing about colors or flags: faces are assigned one at a time
//! in breadth-first order over the Hasse diagram, each candidate image must be
//! a Hasse-neighbor of the image of its parent, and every cover relation with
//! already assigned faces is checked in both directions. It serves as the
//! independent oracle for the automorphism groups computed elsewhere.

use super::RankedPoset;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup};

/// Result of a full automorphism enumeration.
#[derive(Debug, Clone)]
pub struct AutomorphismSearch {
    /// Every automorphism as a permutation of face ids, sorted.
    pub elements: Vec<Perm>,
    pub group: PermGroup,
}

impl AutomorphismSearch {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// All isomorphisms `p -> q` as face maps indexed by face id of `p`.
pub fn isomorphisms(p: &RankedPoset, q: &RankedPoset, max_faces: usize) -> Result<Vec<Vec<usize>>> {
    if p.face_count() > max_faces {
        return Err(Error::scale("poset face count", p.face_count() as u128, max_faces as u128));
    }
    if p.rank() != q.rank() || p.f_vector() != q.f_vector() || p.count_of_rank(-1) != q.count_of_rank(-1) {
        return Ok(Vec::new());
    }
    let order = search_order(p);
    let mut search = Search {
        p,
        q,
        order: &order,
        map: vec![usize::MAX; p.face_count()],
        used: vec![false; q.face_count()],
        found: Vec::new(),
    };
    search.step(0);
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// The automorphism group, by exhaustive search.
pub fn poset_automorphisms(p: &RankedPoset, max_faces: usize) -> Result<AutomorphismSearch> {
    let maps = isomorphisms(p, p, max_faces)?;
    let elements: Vec<Perm> = maps
        .into_iter()
        .map(|m| Perm::from_images(m).expect("isomorphism is a bijection"))
        .collect();
    let group = PermGroup::from_elements(p.face_count(), &elements);
    Ok(AutomorphismSearch { elements, group })
}

/// All order-reversing bijections of `p` onto itself, as face maps.
pub fn dualities(p: &RankedPoset, max_faces: usize) -> Result<Vec<Vec<usize>>> {
    let dual = p.dual();
    let into_dual = isomorphisms(p, &dual, max_faces)?;
    // translate dual ids back to ids of p
    let mut back = vec![0; p.face_count()];
    for f in 0..p.face_count() {
        back[p.dual_id(f)] = f;
    }
    let mut out: Vec<Vec<usize>> = into_dual
        .into_iter()
        .map(|m| m.into_iter().map(|g| back[g]).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Faces in breadth-first order over the Hasse diagram, each with the face it
/// was reached from. The extreme faces of ranks `-1` and `n` come first and
/// are not traversed through.
fn search_order(p: &RankedPoset) -> Vec<(usize, Option<usize>)> {
    let n = p.rank() as isize;
    let total = p.face_count();
    let mut order = Vec::with_capacity(total);
    let mut seen = vec![false; total];
    let extreme = |f: usize| {
        let r = p.rank_of(f);
        r == -1 || (r == n && p.count_of_rank(n) == 1)
    };
    for (f, s) in seen.iter_mut().enumerate() {
        if extreme(f) {
            *s = true;
            order.push((f, None));
        }
    }
    for start in 0..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push((start, None));
        let mut k = order.len() - 1;
        while k < order.len() {
            let f = order[k].0;
            k += 1;
            if extreme(f) {
                continue;
            }
            for &g in p.down(f).iter().chain(p.up(f)) {
                if !seen[g] {
                    seen[g] = true;
                    order.push((g, Some(f)));
                }
            }
        }
    }
    order
}

struct Search<'a> {
    p: &'a RankedPoset,
    q: &'a RankedPoset,
    order: &'a [(usize, Option<usize>)],
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn step(&mut self, k: usize) {
        if k == self.order.len() {
            self.found.push(self.map.clone());
            return;
        }
        let (f, parent) = self.order[k];
        let rank = self.p.rank_of(f);
        let candidates: Vec<usize> = match parent {
            Some(par) => {
                let img = self.map[par];
                self.q.down(img).iter().chain(self.q.up(img)).copied().filter(|&g| self.q.rank_of(g) == rank).collect()
            }
            None => self.q.faces_of_rank(rank).collect(),
        };
        for g in candidates {
            if self.used[g] || !self.compatible(f, g) {
                continue;
            }
            self.map[f] = g;
            self.used[g] = true;
            self.step(k + 1);
            self.used[g] = false;
            self.map[f] = usize::MAX;
        }
    }

    /// Degrees agree and every assigned Hasse-neighbor of `f` maps to a
    /// Hasse-neighbor of `g` in the same direction.
    fn compatible(&self, f: usize, g: usize) -> bool {
        let (p, q) = (self.p, self.q);
        if p.down(f).len() != q.down(g).len() || p.up(f).len() != q.up(g).len() {
            return false;
        }
        let down_ok = p.down(f).iter().all(|&d| {
            let img = self.map[d];
            img == usize::MAX || q.down(g).binary_search(&img).is_ok()
        });
        down_ok
            && p.up(f).iter().all(|&u| {
                let img = self.map[u];
                img == usize::MAX || q.up(g).binary_search(&img).is_ok()
            })
    }
}
