//! The abstract polytope axioms, checked directly on an explicit poset.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::RankedPoset;
use crate::perm::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// Unique minimal and maximal faces.
    Bounded,
    /// Every maximal chain has `n + 2` faces.
    Ranked,
    /// Every section of rank 1 has exactly two middle faces.
    Diamond,
    /// Every section is flag-connected.
    StronglyFlagConnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomFailure {
    ExtremeCount { rank: isize, count: usize },
    /// A face of rank `rank` with no face below (or above) it.
    Dangling { face: usize, rank: isize, above: bool },
    Diamond { lower: usize, upper: usize, middle: usize },
    SectionDisconnected { lower: usize, upper: usize, components: usize },
}

impl AxiomFailure {
    pub fn axiom(&self) -> Axiom {
        match self {
            AxiomFailure::ExtremeCount { .. } => Axiom::Bounded,
            AxiomFailure::Dangling { .. } => Axiom::Ranked,
            AxiomFailure::Diamond { .. } => Axiom::Diamond,
            AxiomFailure::SectionDisconnected { .. } => Axiom::StronglyFlagConnected,
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::ExtremeCount { rank, count } => {
                write!(f, "{count} faces of rank {rank}, expected 1")
            }
            AxiomFailure::Dangling { face, rank, above } => write!(
                f,
                "face {face} of rank {rank} has no face {}",
                if *above { "above" } else { "below" }
            ),
            AxiomFailure::Diamond { lower, upper, middle } => {
                write!(f, "faces {lower} < {upper} have {middle} faces between them, expected 2")
            }
            AxiomFailure::SectionDisconnected { lower, upper, components } => {
                write!(f, "section {upper}/{lower} has {components} flag components")
            }
        }
    }
}

/// Pass/fail per axiom, plus every failure found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub rank: usize,
    pub bounded: bool,
    pub ranked: bool,
    pub diamond: bool,
    pub strongly_flag_connected: bool,
    /// Number of sections whose flag-connectivity was checked.
    pub sections_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_polytope(&self) -> bool {
        self.bounded && self.ranked && self.diamond && self.strongly_flag_connected
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        match axiom {
            Axiom::Bounded => self.bounded,
            Axiom::Ranked => self.ranked,
            Axiom::Diamond => self.diamond,
            Axiom::StronglyFlagConnected => self.strongly_flag_connected,
        }
    }
}

/// Checks every polytope axiom. Strong flag-connectedness is verified
/// section by section, so the report is trustworthy for any input.
pub fn validate_polytope(p: &RankedPoset) -> ValidationReport {
    let n = p.rank() as isize;
    let mut failures = Vec::new();

    for rank in [-1, n] {
        let count = p.count_of_rank(rank);
        if count != 1 {
            failures.push(AxiomFailure::ExtremeCount { rank, count });
        }
    }
    for f in 0..p.face_count() {
        let rank = p.rank_of(f);
        if rank > -1 && p.down(f).is_empty() {
            failures.push(AxiomFailure::Dangling { face: f, rank, above: false });
        }
        if rank < n && p.up(f).is_empty() {
            failures.push(AxiomFailure::Dangling { face: f, rank, above: true });
        }
    }

    for upper in 0..p.face_count() {
        if p.rank_of(upper) < 1 {
            continue;
        }
        let mut between: HashMap<usize, usize> = HashMap::new();
        for &mid in p.down(upper) {
            for &lower in p.down(mid) {
                *between.entry(lower).or_default() += 1;
            }
        }
        let mut pairs: Vec<(usize, usize)> = between.into_iter().collect();
        pairs.sort_unstable();
        for (lower, middle) in pairs {
            if middle != 2 {
                failures.push(AxiomFailure::Diamond { lower, upper, middle });
            }
        }
    }

    let mut sections_checked = 0;
    let mut stamp = vec![usize::MAX; p.face_count()];
    for upper in 0..p.face_count() {
        let top_rank = p.rank_of(upper);
        if top_rank < 2 {
            continue;
        }
        // mark the faces below `upper`
        let mut below = vec![upper];
        stamp[upper] = upper;
        let mut k = 0;
        while k < below.len() {
            let f = below[k];
            k += 1;
            for &d in p.down(f) {
                if stamp[d] != upper {
                    stamp[d] = upper;
                    below.push(d);
                }
            }
        }
        for &lower in &below {
            if top_rank - p.rank_of(lower) < 3 {
                continue;
            }
            sections_checked += 1;
            let components = section_components(p, lower, upper, top_rank, &stamp);
            if components != 1 {
                failures.push(AxiomFailure::SectionDisconnected { lower, upper, components });
            }
        }
    }

    let has = |a: Axiom| failures.iter().any(|f| f.axiom() == a);
    ValidationReport {
        rank: p.rank(),
        bounded: !has(Axiom::Bounded),
        ranked: !has(Axiom::Ranked),
        diamond: !has(Axiom::Diamond),
        strongly_flag_connected: !has(Axiom::StronglyFlagConnected),
        sections_checked,
        failures,
    }
}

/// Number of connected components of the flags of the section `upper/lower`,
/// where flags are adjacent when they differ in exactly one face.
fn section_components(p: &RankedPoset, lower: usize, upper: usize, top_rank: isize, stamp: &[usize]) -> usize {
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut chain = vec![lower];
    collect(p, &mut chain, upper, top_rank, stamp, &mut chains);
    if chains.is_empty() {
        return 0;
    }
    let len = chains[0].len();
    let mut uf = UnionFind::new(chains.len());
    // interior positions only; the ends are fixed
    for pos in 1..len - 1 {
        let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, c) in chains.iter().enumerate() {
            let mut key = c.clone();
            key[pos] = usize::MAX;
            match first.get(&key) {
                Some(&j) => uf.union(i, j),
                None => {
                    first.insert(key, i);
                }
            }
        }
    }
    uf.classes().len()
}

fn collect(
    p: &RankedPoset,
    chain: &mut Vec<usize>,
    upper: usize,
    top_rank: isize,
    stamp: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *chain.last().unwrap();
    if last == upper {
        out.push(chain.clone());
        return;
    }
    if p.rank_of(last) >= top_rank {
        return;
    }
    for &next in p.up(last) {
        if stamp[next] == upper {
            chain.push(next);
            collect(p, chain, upper, top_rank, stamp, out);
            chain.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::cube;
    use super::*;

    #[test]
    fn segment_and_polygons_pass() {
        assert!(validate_polytope(&RankedPoset::segment()).is_polytope());
        for p in 2..8 {
            assert!(validate_polytope(&RankedPoset::polygon(p)).is_polytope(), "{p}-gon");
        }
        let c = validate_polytope(&cube());
        assert!(c.is_polytope(), "{:?}", c.failures);
        assert!(c.sections_checked > 0);
    }

    #[test]
    fn duplicated_middle_face_breaks_diamond() {
        // a triangle whose edge {0,1} appears twice
        let levels = vec![
            vec![vec![]],
            vec![vec![0]; 3],
            vec![vec![0, 1], vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![vec![0, 1, 2, 3]],
        ];
        let p = RankedPoset::from_levels(2, levels).unwrap();
        let report = validate_polytope(&p);
        assert!(!report.diamond);
        let top = p.faces_of_rank(2).start;
        let v0 = p.face_id(0, 0);
        let v1 = p.face_id(0, 1);
        assert!(report.failures.contains(&AxiomFailure::Diamond { lower: v0, upper: top, middle: 3 }));
        assert!(report.failures.contains(&AxiomFailure::Diamond { lower: v1, upper: top, middle: 3 }));
    }

    #[test]
    fn two_triangles_are_not_flag_connected() {
        // two disjoint triangles under one top face: diamond holds, connectivity fails
        let levels = vec![
            vec![vec![]],
            vec![vec![0]; 6],
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
            vec![(0..6).collect()],
        ];
        let p = RankedPoset::from_levels(2, levels).unwrap();
        let report = validate_polytope(&p);
        assert!(report.diamond && report.bounded && report.ranked);
        assert!(!report.strongly_flag_connected);
    }

    #[test]
    fn unbounded_poset() {
        let levels = vec![vec![vec![]], vec![vec![0]; 2], vec![vec![0, 1], vec![0, 1]]];
        let p = RankedPoset::from_levels(1, levels).unwrap();
        let report = validate_polytope(&p);
        assert!(!report.bounded);
    }
}
