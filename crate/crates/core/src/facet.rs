//! Triangle facets `x_ij - x_ik - x_jk <= 0` of the metric cone.

use std::fmt;
use std::ops::Sub;

use crate::coords::{num_pairs, PairIndexer, PointPermutation};
use crate::cut::CutVector;
use crate::error::{invalid, Result};

/// The triangle facet T(ij;k): coefficient +1 on the apex pair `ij` and -1 on
/// `ik` and `jk`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleFacet {
    n: usize,
    i: usize,
    j: usize,
    k: usize,
}

impl TriangleFacet {
    /// T(ij;k). The apex pair is unordered; points are 1-based.
    pub fn new(i: usize, j: usize, k: usize, n: usize) -> Result<Self> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if i == 0 || k == 0 || j > n || k > n || i == j || k == i || k == j {
            return Err(invalid(format!(
                "T({i}{j};{k}) is not a triangle facet on 1..={n}"
            )));
        }
        Ok(Self { n, i, j, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apex(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn third(&self) -> usize {
        self.k
    }

    /// The supporting 3-set, sorted.
    pub fn support(&self) -> [usize; 3] {
        let mut s = [self.i, self.j, self.k];
        s.sort_unstable();
        s
    }

    /// Coordinates of the nonzero entries with their signs, apex first.
    pub fn entries(&self) -> [(usize, i8); 3] {
        let idx = PairIndexer::new(self.n).expect("n >= 3");
        [
            (idx.index_unchecked(self.i, self.j), 1),
            (idx.index_unchecked(self.i, self.k), -1),
            (idx.index_unchecked(self.j, self.k), -1),
        ]
    }

    /// Coefficient at coordinate `pos`.
    pub fn sign_at(&self, pos: usize) -> i8 {
        self.entries()
            .iter()
            .find(|&&(p, _)| p == pos)
            .map_or(0, |&(_, s)| s)
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut v = vec![0; num_pairs(self.n)];
        for (pos, s) in self.entries() {
            v[pos] = s as i64;
        }
        v
    }

    /// `x_ij - x_ik - x_jk`.
    pub fn value<T>(&self, x: &[T]) -> Result<T>
    where
        T: Clone + Sub<Output = T>,
    {
        if x.len() != num_pairs(self.n) {
            return Err(invalid(format!(
                "vector has length {}, expected {}",
                x.len(),
                num_pairs(self.n)
            )));
        }
        let [(a, _), (b, _), (c, _)] = self.entries();
        Ok(x[a].clone() - x[b].clone() - x[c].clone())
    }

    /// Integer value on a cut: one of 0 or -2.
    pub fn value_on_cut(&self, cut: &CutVector) -> i64 {
        let [(a, _), (b, _), (c, _)] = self.entries();
        cut.get(a) as i64 - cut.get(b) as i64 - cut.get(c) as i64
    }

    pub fn contains_cut(&self, cut: &CutVector) -> bool {
        self.value_on_cut(cut) == 0
    }

    pub fn permuted(&self, sigma: &PointPermutation) -> Result<Self> {
        if sigma.n() != self.n {
            return Err(invalid("permutation degree differs from facet size"));
        }
        Self::new(
            sigma.apply(self.i),
            sigma.apply(self.j),
            sigma.apply(self.k),
            self.n,
        )
    }

    /// Position in the order produced by [`enumerate_triangle_facets`].
    pub fn ordinal(&self) -> usize {
        let [a, b, c] = self.support();
        let offset = if (self.i, self.j) == (a, b) {
            0
        } else if (self.i, self.j) == (a, c) {
            1
        } else {
            2
        };
        3 * triple_rank(a, b, c, self.n) + offset
    }
}

impl fmt::Debug for TriangleFacet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{};{})", self.i, self.j, self.k)
    }
}

/// Rank of the 3-set `a < b < c` among all 3-subsets of `1..=n` in
/// lexicographic order.
pub fn triple_rank(a: usize, b: usize, c: usize, n: usize) -> usize {
    let mut rank = 0;
    for x in 1..a {
        rank += binom(n - x, 2);
    }
    for y in a + 1..b {
        rank += n - y;
    }
    rank + (c - b - 1)
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// All 3-subsets of `1..=n` in lexicographic order.
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(binom(n, 3));
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// The `3 * C(n,3)` triangle facets: for each 3-set `a < b < c` in
/// lexicographic order, T(ab;c), T(ac;b), T(bc;a).
pub fn enumerate_triangle_facets(n: usize) -> Result<Vec<TriangleFacet>> {
    if n < 3 {
        return Err(invalid(format!("need n >= 3, got {n}")));
    }
    let mut out = Vec::with_capacity(3 * binom(n, 3));
    for [a, b, c] in triples(n) {
        out.push(TriangleFacet::new(a, b, c, n)?);
        out.push(TriangleFacet::new(a, c, b, n)?);
        out.push(TriangleFacet::new(b, c, a, n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::apply_permutation;
    use crate::cut::{cut_vector, enumerate_cuts};

    #[test]
    fn facet_counts() {
        assert_eq!(enumerate_triangle_facets(4).unwrap().len(), 12);
        assert_eq!(enumerate_triangle_facets(5).unwrap().len(), 30);
        assert_eq!(enumerate_triangle_facets(6).unwrap().len(), 60);
    }

    #[test]
    fn one_positive_two_negative_on_one_triple() {
        for f in enumerate_triangle_facets(6).unwrap() {
            let d = f.to_dense();
            assert_eq!(d.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(d.iter().filter(|&&x| x == -1).count(), 2);
            assert_eq!(d.iter().filter(|&&x| x != 0).count(), 3);
            let idx = PairIndexer::new(6).unwrap();
            let support = f.support();
            for (pos, &x) in d.iter().enumerate() {
                if x != 0 {
                    let (i, j) = idx.unindex(pos).unwrap();
                    assert!(support.contains(&i) && support.contains(&j));
                }
            }
        }
    }

    #[test]
    fn ordinal_matches_enumeration() {
        for n in 3..=8 {
            for (pos, f) in enumerate_triangle_facets(n).unwrap().iter().enumerate() {
                assert_eq!(f.ordinal(), pos);
            }
        }
    }

    #[test]
    fn three_cycle_maps_t12_3_to_t23_1() {
        let sigma = PointPermutation::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let f = TriangleFacet::new(1, 2, 3, 4).unwrap();
        let g = TriangleFacet::new(2, 3, 1, 4).unwrap();
        assert_eq!(f.permuted(&sigma).unwrap(), g);
        assert_eq!(
            apply_permutation(&sigma, &f.to_dense()).unwrap(),
            g.to_dense()
        );
    }

    #[test]
    fn cuts_satisfy_every_triangle_inequality() {
        for n in 3..=8 {
            let facets = enumerate_triangle_facets(n).unwrap();
            for c in enumerate_cuts(n).unwrap() {
                for f in &facets {
                    let v = f.value_on_cut(&c);
                    assert!(v == 0 || v == -2, "{f:?} on {c:?} gave {v}");
                    assert_eq!(f.value(&c.to_dense()).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn value_examples() {
        let f = TriangleFacet::new(1, 2, 3, 4).unwrap();
        assert_eq!(
            f.value(&cut_vector(&[1], 4).unwrap().to_dense()).unwrap(),
            0
        );
        assert_eq!(f.value(&[0i64; 6]).unwrap(), 0);
        assert_eq!(
            f.value(&cut_vector(&[3], 4).unwrap().to_dense()).unwrap(),
            -2
        );
        assert!(f.value(&[0i64; 5]).is_err());
    }

    #[test]
    fn invalid_facets_rejected() {
        assert!(TriangleFacet::new(1, 1, 2, 4).is_err());
        assert!(TriangleFacet::new(1, 2, 2, 4).is_err());
        assert!(TriangleFacet::new(1, 2, 5, 4).is_err());
    }
}
