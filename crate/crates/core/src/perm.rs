//! Permutations and permutation groups.
//!
//! A [`PermGroup`] is given by generators; its stabilizer chain is built on
//! demand with the deterministic Schreier-Sims algorithm and answers order,
//! membership and element-listing queries.

use std::cell::OnceCell;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from its image list, or `None` if the list is not
    /// a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images.into_iter().map(|x| x as u32).collect()))
    }


    /// The permutation of `0..degree` with the given cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return None;
                }
                touched[x] = true;
                img[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(img)
    }

    /// The transposition `(a b)`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        img.swap(a, b);
        Perm(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.0.iter().enumerate().all(|(i, &x)| self.0[x as usize] as usize == i)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u128 {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1u128;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u128;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Conjugate `other` by `self`: `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse())
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, with `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// One level of a stabilizer chain, with its transversal kept as a Schreier
/// vector.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    inverses: Vec<Perm>,
    orbit: Vec<usize>,
    /// For `x` in the orbit other than `base`: index `k` of the generator with
    /// `x = gens[k](y)` for some `y` closer to `base`.
    label: Vec<u32>,
}

const NOT_IN_ORBIT: u32 = u32::MAX;
const BASE_LABEL: u32 = u32::MAX - 1;

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            inverses: Vec::new(),
            orbit: Vec::new(),
            label: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn push_gen(&mut self, g: Perm, degree: usize) {
        self.inverses.push(g.inverse());
        self.gens.push(g);
        self.rebuild(degree);
    }

    fn rebuild(&mut self, degree: usize) {
        if self.inverses.len() != self.gens.len() {
            self.inverses = self.gens.iter().map(Perm::inverse).collect();
        }
        self.label = vec![NOT_IN_ORBIT; degree];
        self.label[self.base] = BASE_LABEL;
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            k += 1;
            for (gi, g) in self.gens.iter().enumerate() {
                let y = g.apply(x);
                if self.label[y] == NOT_IN_ORBIT {
                    self.label[y] = gi as u32;
                    self.orbit.push(y);
                }
            }
        }
    }

    fn in_orbit(&self, x: usize) -> bool {
        self.label[x] != NOT_IN_ORBIT
    }

    /// `u_x⁻¹ ∘ g`, where `u_x` is the transversal element taking `base` to `x`.
    fn strip(&self, mut x: usize, mut g: Perm) -> Perm {
        while self.label[x] != BASE_LABEL {
            let inv = &self.inverses[self.label[x] as usize];
            g = inv.compose(&g);
            x = inv.apply(x);
        }
        g
    }

    /// The transversal element taking `base` to `x`.
    fn transversal(&self, mut x: usize) -> Perm {
        let mut u = Perm::identity(self.label.len());
        while self.label[x] != BASE_LABEL {
            let k = self.label[x] as usize;
            u = u.compose(&self.gens[k]);
            x = self.inverses[k].apply(x);
        }
        u
    }
}

#[derive(Debug, Clone)]
struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Perm]) -> Self {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain { levels: Vec::new() };
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let moved = (0..degree).find(|&x| g.apply(x) != x).unwrap();
                chain.levels.push(Level::new(moved, degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixing: Vec<Perm> = gens
                .iter()
                .filter(|g| chain.levels[..i].iter().all(|l| g.apply(l.base) == l.base))
                .cloned()
                .collect();
            chain.levels[i].gens = fixing;
            chain.levels[i].rebuild(degree);
        }

        // Each level remembers how many of its Schreier generators are known
        // to sift, so restarts do not redo finished work.
        let mut checked: Vec<usize> = vec![0; chain.levels.len()];
        let mut i = chain.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match chain.find_unsifted(lvl, &mut checked[lvl]) {
                None => i -= 1,
                Some((residue, depth)) => {
                    if depth == chain.levels.len() {
                        let moved = (0..degree).find(|&x| residue.apply(x) != x).unwrap();
                        chain.levels.push(Level::new(moved, degree));
                        checked.push(0);
                    }
                    let levels = chain.levels[lvl + 1..=depth].iter_mut();
                    for (level, c) in levels.zip(&mut checked[lvl + 1..=depth]) {
                        level.push_gen(residue.clone(), degree);
                        *c = 0;
                    }
                    i = depth + 1;
                }
            }
        }
        chain
    }

    /// Looks for a Schreier generator of level `lvl` that does not sift
    /// through the levels below it. Pairs `(beta, s)` are visited in a fixed
    /// order; `checked` counts the pairs already known to sift.
    fn find_unsifted(&self, lvl: usize, checked: &mut usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lvl];
        let ngens = level.gens.len();
        let total = level.orbit.len() * ngens;
        while *checked < total {
            let beta = level.orbit[*checked / ngens];
            let s = &level.gens[*checked % ngens];
            let u_beta = level.transversal(beta);
            let image = s.apply(beta);
            let schreier = level.strip(image, s.compose(&u_beta));
            let (residue, depth) = self.sift(schreier, lvl + 1);
            if depth < self.levels.len() || !residue.is_identity() {
                return Some((residue, depth));
            }
            *checked += 1;
        }
        None
    }

    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            if !level.in_orbit(beta) {
                return (g, i);
            }
            g = level.strip(beta, g);
        }
        (g, self.levels.len())
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }
}

/// A permutation group on `0..degree` given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceCell<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        PermGroup {
            degree,
            generators,
            chain: OnceCell::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new())
    }

    /// The group generated by `elements`, keeping only the elements that
    /// enlarge the group seen so far as generators.
    pub fn from_elements<'a>(degree: usize, elements: impl IntoIterator<Item = &'a Perm>) -> Self {
        let mut group = PermGroup::trivial(degree);
        for e in elements {
            if !group.contains(e) {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = PermGroup::new(degree, gens);
            }
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let chain = self.chain();
        let (residue, depth) = chain.sift(p.clone(), 0);
        depth == chain.levels.len() && residue.is_identity()
    }

    /// All elements, sorted, or `None` when the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Perm>> {
        if self.order() > limit as u128 {
            return None;
        }
        let chain = self.chain();
        let mut elems = vec![Perm::identity(self.degree)];
        for level in chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = level.transversal(x);
                for e in &elems {
                    next.push(u.compose(e));
                }
            }
            elems = next;
        }
        elems.sort();
        Some(elems)
    }

    /// Orbits of the group on points, each sorted, listed by minimum point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbits().len() == 1
    }

    /// Whether every element of `other` lies in this group.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as subgroups of the symmetric group.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.contains_group(other)
    }

    /// Whether `sub` is a normal subgroup of this group.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        self.generators.iter().all(|g| {
            let inv = g.inverse();
            sub.generators
                .iter()
                .all(|h| sub.contains(&g.compose(h).compose(&inv)))
        })
    }
}

/// Orbits of the group generated by `gens` on `0..degree`.
pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree {
            uf.union(x, g.apply(x));
        }
    }
    uf.classes()
}

/// Distinct elements of a list of permutations.
pub fn distinct(perms: &[Perm]) -> usize {
    perms.iter().collect::<HashSet<_>>().len()
}

/// Disjoint-set forest over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; the smaller root wins.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// The classes, each sorted, ordered by minimum element.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}
