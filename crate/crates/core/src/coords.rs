//! Coordinates of R^(n choose 2): pair indexing, point sets and the
//! permutation action of Sym(n) on pair-indexed vectors.
//!
//! Points are 1-based throughout (`1..=n`). Pairs `(i, j)` with `i < j` are
//! laid out lexicographically, so for `n = 4` the coordinate order is
//! `12, 13, 14, 23, 24, 34`.

use std::fmt;
use std::ops::Sub;

use num_traits::One;

use crate::error::{invalid, Result};

/// Largest number of points supported by the packed cut representation.
pub const MAX_POINTS: usize = 16;

/// Number of unordered pairs of an `n`-set.
pub const fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bijection between pairs `1 <= i < j <= n` and `0..C(n,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairIndexer {
    n: usize,
}

impl PairIndexer {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("need at least 2 points, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        num_pairs(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        if !(1 <= i && i < j && j <= self.n) {
            return Err(invalid(format!(
                "pair ({i},{j}) is not 1 <= i < j <= {}",
                self.n
            )));
        }
        Ok(self.index_unchecked(i, j))
    }

    /// Index of the unordered pair `{a, b}`; the caller guarantees validity.
    #[inline]
    pub(crate) fn index_unchecked(&self, a: usize, b: usize) -> usize {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        (i - 1) * (2 * self.n - i) / 2 + (j - i - 1)
    }

    pub fn unindex(&self, idx: usize) -> Result<(usize, usize)> {
        if idx >= self.len() {
            return Err(invalid(format!(
                "pair index {idx} out of range for n = {}",
                self.n
            )));
        }
        let mut rest = idx;
        for i in 1..self.n {
            let row = self.n - i;
            if rest < row {
                return Ok((i, i + 1 + rest));
            }
            rest -= row;
        }
        unreachable!("index bounds checked above")
    }

    /// All pairs in coordinate order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |i| (i + 1..=self.n).map(move |j| (i, j)))
    }
}

/// A subset of `{1, ..., n}`, packed as a bit mask (bit `i - 1` is point `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_points(points: &[usize], n: usize) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(invalid(format!("n = {n} exceeds {MAX_POINTS}")));
        }
        let mut mask = 0u32;
        for &p in points {
            if p == 0 || p > n {
                return Err(invalid(format!("point {p} outside 1..={n}")));
            }
            mask |= 1 << (p - 1);
        }
        Ok(PointSet(mask))
    }

    pub fn from_mask(mask: u32) -> Self {
        PointSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        (1..=32).contains(&p) && self.0 & (1 << (p - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & full_mask(n))
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        PointSet(self.0 ^ other.0)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (1..=32).filter(move |&p| self.contains(p))
    }

    /// Every subset of `{1, ..., n}` in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = PointSet> {
        (0..1u32 << n).map(PointSet)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A permutation of the points `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointPermutation {
    // images[i - 1] = sigma(i), 1-based values
    images: Vec<usize>,
}

impl PointPermutation {
    /// Builds `sigma` from its images `sigma(1), ..., sigma(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(invalid(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// Product of the given cycles (each a list of 1-based points),
    /// applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut result = Self::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (1..=n).collect();
            for (idx, &p) in cycle.iter().enumerate() {
                let q = cycle[(idx + 1) % cycle.len()];
                if p == 0 || p > n || q == 0 || q > n {
                    return Err(invalid(format!("cycle {cycle:?} leaves 1..={n}")));
                }
                images[p - 1] = q;
            }
            let c = Self::new(images)?;
            result = c.compose(&result);
        }
        Ok(result)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "degree mismatch");
        Self {
            images: other.images.iter().map(|&p| self.apply(p)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Self { images }
    }

    pub fn apply_to_set(&self, s: PointSet) -> PointSet {
        let mut mask = 0;
        for p in s.points() {
            mask |= 1 << (self.apply(p) - 1);
        }
        PointSet(mask)
    }

    /// The induced permutation of pair coordinates, as 0-based images:
    /// `result[index(i,j)] = index(sigma(i), sigma(j))`.
    pub fn pair_action(&self) -> Vec<usize> {
        let idx = PairIndexer { n: self.n() };
        idx.pairs()
            .map(|(i, j)| idx.index_unchecked(self.apply(i), self.apply(j)))
            .collect()
    }

    /// Generators of Sym(n): the transposition (1 2) and the n-cycle (1 2 ... n).
    pub fn symmetric_group_generators(n: usize) -> Vec<Self> {
        if n < 2 {
            return Vec::new();
        }
        let cycle: Vec<usize> = (1..=n).collect();
        vec![
            Self::from_cycles(n, &[&[1, 2]]).expect("valid transposition"),
            Self::from_cycles(n, &[&cycle]).expect("valid cycle"),
        ]
    }
}

impl fmt::Debug for PointPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointPermutation{:?}", self.images)
    }
}

/// Applies `sigma` to a pair-indexed vector: coordinate `{sigma(i), sigma(j)}`
/// of the result is coordinate `{i, j}` of `v`.
pub fn apply_permutation<T: Clone>(sigma: &PointPermutation, v: &[T]) -> Result<Vec<T>> {
    let n = sigma.n();
    if v.len() != num_pairs(n) {
        return Err(invalid(format!(
            "vector has length {}, expected C({n},2) = {}",
            v.len(),
            num_pairs(n)
        )));
    }
    let action = sigma.pair_action();
    let mut out = v.to_vec();
    for (src, &dst) in action.iter().enumerate() {
        out[dst] = v[src].clone();
    }
    Ok(out)
}

/// The switching reflection by the cut δ(S): `y_ij = 1 - x_ij` on the pairs
/// split by `s`, `y_ij = x_ij` elsewhere.
pub fn switching_reflection<T>(s: PointSet, n: usize, x: &[T]) -> Result<Vec<T>>
where
    T: Clone + One + Sub<Output = T>,
{
    if x.len() != num_pairs(n) {
        return Err(invalid(format!(
            "vector has length {}, expected C({n},2) = {}",
            x.len(),
            num_pairs(n)
        )));
    }
    let idx = PairIndexer::new(n)?;
    Ok(idx
        .pairs()
        .zip(x)
        .map(|((i, j), xij)| {
            if s.contains(i) != s.contains(j) {
                T::one() - xij.clone()
            } else {
                xij.clone()
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_for_four_points() {
        let idx = PairIndexer::new(4).unwrap();
        let pairs: Vec<_> = idx.pairs().collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(idx.index(1, 2).unwrap(), 0);
        assert_eq!(idx.index(3, 4).unwrap(), 5);
        assert_eq!(idx.index(2, 4).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_pairs() {
        let idx = PairIndexer::new(4).unwrap();
        assert!(idx.index(2, 2).is_err());
        assert!(idx.index(3, 2).is_err());
        assert!(idx.index(0, 2).is_err());
        assert!(idx.index(1, 5).is_err());
        assert!(idx.unindex(6).is_err());
    }

    #[test]
    fn round_trip_up_to_twelve() {
        for n in 2..=12 {
            let idx = PairIndexer::new(n).unwrap();
            for (pos, (i, j)) in idx.pairs().enumerate() {
                assert_eq!(idx.index(i, j).unwrap(), pos);
                assert_eq!(idx.unindex(pos).unwrap(), (i, j));
            }
        }
    }

    #[test]
    fn cycles_compose_right_to_left() {
        // (1 2)(2 3): 3 -> 2 -> 1
        let p = PointPermutation::from_cycles(3, &[&[1, 2], &[2, 3]]).unwrap();
        assert_eq!(p.images(), &[2, 3, 1]);
        assert_eq!(p.compose(&p.inverse()), PointPermutation::identity(3));
    }

    #[test]
    fn apply_permutation_checks_length() {
        let id = PointPermutation::identity(4);
        assert!(apply_permutation(&id, &[0i64; 5]).is_err());
        let v: Vec<i64> = (0..6).collect();
        assert_eq!(apply_permutation(&id, &v).unwrap(), v);
    }

    #[test]
    fn switching_by_empty_set_is_identity() {
        let x = vec![3i64, -1, 0, 7, 2, 5];
        assert_eq!(switching_reflection(PointSet::EMPTY, 4, &x).unwrap(), x);
    }
}
