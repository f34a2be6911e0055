//! Permutations of `0..degree` and stabilizer chains.

use std::fmt;

use crate::error::{invalid, Result};

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Perm) -> Perm {
        other.compose(self)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let mut seen = vec![false; self.0.len()];
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
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
                x = self.0[x];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    // transversal[x] maps base to x, for x in the base orbit
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Self {
            base,
            gens: Vec::new(),
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        let mut queue = vec![self.base];
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity(degree));
        while let Some(x) = queue.pop() {
            let tx = self.transversal[x].clone().expect("orbit point");
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(tx.then(g));
                    queue.push(y);
                }
            }
        }
    }

    fn orbit(&self) -> impl Iterator<Item = usize> + '_ {
        self.transversal
            .iter()
            .enumerate()
            .filter_map(|(x, t)| t.as_ref().map(|_| x))
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Base and strong generating set built by deterministic Schreier-Sims.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(invalid(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            chain.insert(g.clone(), 0);
        }
        Ok(chain)
    }

    /// Strips `g` through the chain from `from`; returns the residue and the
    /// level where sifting stopped.
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.apply(level.base);
            match &level.transversal[x] {
                Some(t) => g = g.then(&t.inverse()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    /// Adds `g` (which fixes the first `from` base points) as a strong
    /// generator if it is not already a member, then restores closure.
    fn insert(&mut self, g: Perm, from: usize) {
        let (h, stop) = self.sift(g, from);
        if h.is_identity() {
            return;
        }
        if stop == self.levels.len() {
            let base = h.first_moved_point().expect("non-identity");
            self.levels.push(Level::new(base, self.degree));
        }
        for l in from..=stop {
            self.levels[l].gens.push(h.clone());
        }
        for l in (from..=stop).rev() {
            self.close(l);
        }
    }

    /// Sifts every Schreier generator of level `l` into level `l + 1`.
    fn close(&mut self, l: usize) {
        self.levels[l].rebuild_orbit();
        let mut gi = 0;
        loop {
            let level = &self.levels[l];
            if gi >= level.gens.len() {
                break;
            }
            let orbit: Vec<usize> = level.orbit().collect();
            let s = level.gens[gi].clone();
            for x in orbit {
                let level = &self.levels[l];
                let tx = level.transversal[x].clone().expect("orbit point");
                let y = s.apply(x);
                let ty = level.transversal[y].clone().expect("orbit is closed");
                let schreier = tx.then(&s).then(&ty.inverse());
                if self.sift(schreier.clone(), l + 1).0.is_identity() {
                    continue;
                }
                self.insert(schreier, l + 1);
            }
            gi += 1;
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit_len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(Level::orbit_len).collect()
    }
}

/// A permutation group given by generators, with its exact order.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabilizerChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        let chain = StabilizerChain::new(degree, &generators)?;
        Ok(Self {
            degree,
            generators,
            chain,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    /// Orbits of the group on `0..degree`, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, &self.generators)
    }
}

/// Exact order of the group generated by `gens` (1 for no generators).
pub fn group_order(gens: &[Perm]) -> Result<u128> {
    let degree = gens.first().map_or(0, Perm::degree);
    Ok(StabilizerChain::new(degree, gens)?.order())
}

pub fn orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for s in 0..degree {
        if label[s] != usize::MAX {
            continue;
        }
        let mut orbit = vec![s];
        label[s] = out.len();
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = out.len();
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn cycle(degree: usize, pts: &[usize]) -> Perm {
        let mut v: Vec<usize> = (0..degree).collect();
        for (i, &p) in pts.iter().enumerate() {
            v[p] = pts[(i + 1) % pts.len()];
        }
        Perm::new(v).unwrap()
    }

    /// Order by brute-force closure.
    fn closure_order(degree: usize, gens: &[Perm]) -> usize {
        let mut seen = HashSet::from([Perm::identity(degree)]);
        let mut frontier = vec![Perm::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(group_order(&[]).unwrap(), 1);
        assert_eq!(group_order(&[cycle(4, &[0, 1])]).unwrap(), 2);
        assert_eq!(group_order(&[Perm::identity(5)]).unwrap(), 1);
    }

    #[test]
    fn symmetric_and_alternating_groups() {
        for n in 2..=9 {
            let all: Vec<usize> = (0..n).collect();
            let gens = vec![cycle(n, &[0, 1]), cycle(n, &all)];
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(group_order(&gens).unwrap(), fact);
        }
        let a5 = vec![cycle(5, &[0, 1, 2]), cycle(5, &[0, 1, 2, 3, 4])];
        assert_eq!(group_order(&a5).unwrap(), 60);
    }

    #[test]
    fn membership() {
        let g = PermGroup::new(4, vec![cycle(4, &[0, 1, 2, 3])]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.contains(&cycle(4, &[0, 2]).compose(&cycle(4, &[1, 3]))));
        assert!(!g.contains(&cycle(4, &[0, 1])));
        assert_eq!(g.orbits(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn degree_mismatch_rejected() {
        assert!(PermGroup::new(3, vec![Perm::identity(4)]).is_err());
        assert!(Perm::new(vec![0, 0]).is_err());
    }

    proptest! {
        #[test]
        fn schreier_sims_matches_closure(
            raw in prop::collection::vec(Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(), 1..4)
        ) {
            let gens: Vec<Perm> = raw.into_iter().map(|v| Perm::new(v).unwrap()).collect();
            prop_assert_eq!(group_order(&gens).unwrap(), closure_order(7, &gens) as u128);
        }
    }
}
