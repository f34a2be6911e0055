//! Cut vectors δ(S).

use std::fmt;

use crate::coords::{num_pairs, PairIndexer, PointPermutation, PointSet, MAX_POINTS};
use crate::error::{invalid, Result};

/// The incidence vector of the cut δ(S), packed one bit per pair.
///
/// The generating set is stored in canonical form: of `S` and its complement,
/// the one not containing point `n`. Two cuts are equal iff their vectors are.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutVector {
    n: usize,
    shore: PointSet,
    bits: u128,
}

impl CutVector {
    pub fn new(s: PointSet, n: usize) -> Result<Self> {
        if !(2..=MAX_POINTS).contains(&n) {
            return Err(invalid(format!(
                "cut vectors need 2 <= n <= {MAX_POINTS}, got {n}"
            )));
        }
        if s.mask() & !crate::coords::full_mask(n) != 0 {
            return Err(invalid(format!("{s:?} is not a subset of 1..={n}")));
        }
        let shore = if s.contains(n) { s.complement(n) } else { s };
        let idx = PairIndexer::new(n)?;
        let mut bits = 0u128;
        for (pos, (i, j)) in idx.pairs().enumerate() {
            if shore.contains(i) != shore.contains(j) {
                bits |= 1 << pos;
            }
        }
        Ok(Self { n, shore, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical shore (never contains `n`).
    pub fn shore(&self) -> PointSet {
        self.shore
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn dim(&self) -> usize {
        num_pairs(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, pos: usize) -> bool {
        self.bits >> pos & 1 == 1
    }

    /// Number of pairs in the cut.
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn to_dense(&self) -> Vec<i64> {
        (0..self.dim()).map(|p| self.get(p) as i64).collect()
    }

    pub fn permuted(&self, sigma: &PointPermutation) -> Result<Self> {
        if sigma.n() != self.n {
            return Err(invalid("permutation degree differs from cut size"));
        }
        Self::new(sigma.apply_to_set(self.shore), self.n)
    }
}

impl fmt::Debug for CutVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ({:?})", self.shore)
    }
}

/// δ(S) for `S ⊆ {1, ..., n}` given as 1-based points.
pub fn cut_vector(s: &[usize], n: usize) -> Result<CutVector> {
    CutVector::new(PointSet::from_points(s, n)?, n)
}

/// All `2^(n-1) - 1` nonzero cuts, ordered by canonical shore mask.
pub fn enumerate_cuts(n: usize) -> Result<Vec<CutVector>> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    if n > MAX_POINTS {
        return Err(invalid(format!("n = {n} exceeds {MAX_POINTS}")));
    }
    (1..1u32 << (n - 1))
        .map(|mask| CutVector::new(PointSet::from_mask(mask), n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rays_from_the_four_point_table() {
        assert_eq!(
            cut_vector(&[1], 4).unwrap().to_dense(),
            vec![1, 1, 1, 0, 0, 0]
        );
        assert_eq!(
            cut_vector(&[1, 2], 4).unwrap().to_dense(),
            vec![0, 1, 1, 1, 1, 0]
        );
        assert!(cut_vector(&[], 4).unwrap().is_zero());
        assert!(cut_vector(&[1, 2, 3, 4], 4).unwrap().is_zero());
    }

    #[test]
    fn canonical_shore_avoids_last_point() {
        let c = cut_vector(&[2, 4], 4).unwrap();
        assert_eq!(c.shore(), PointSet::from_points(&[1, 3], 4).unwrap());
        assert_eq!(c, cut_vector(&[1, 3], 4).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_cuts(4).unwrap().len(), 7);
        assert_eq!(enumerate_cuts(5).unwrap().len(), 15);
        let three = enumerate_cuts(3).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three.iter().all(|c| c.weight() == 2));
        assert!(enumerate_cuts(2).is_err());
    }

    #[test]
    fn out_of_range_points_rejected() {
        assert!(cut_vector(&[5], 4).is_err());
        assert!(cut_vector(&[0], 4).is_err());
    }
}
