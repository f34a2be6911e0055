//! Incidence between cuts and triangle facets, hypermetric inequalities and
//! the exact-rank adjacency oracle for the cut cone.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;
use rayon::prelude::*;

use crate::coords::{num_pairs, PairIndexer, PointSet};
use crate::cut::{enumerate_cuts, CutVector};
use crate::error::{invalid, Error, Result};
use crate::facet::TriangleFacet;
use crate::linalg::bareiss_rank;

/// Default bound `|b_i| <= 3` for the enumerated hypermetric slice.
pub const DEFAULT_HYPERMETRIC_BOUND: i64 = 3;

/// `x_ij - x_ik - x_jk` for `f = T(ij;k)`.
pub fn facet_value<T>(f: &TriangleFacet, x: &[T]) -> Result<T>
where
    T: Clone + Sub<Output = T>,
{
    f.value(x)
}

/// The nonzero cuts lying on one triangle facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceReport {
    pub facet: TriangleFacet,
    pub cuts_on_facet: Vec<CutVector>,
    pub count: usize,
}

/// Expected number of cuts on a triangle facet: `3 * 2^(n-3) - 1`.
pub fn triangle_cut_count(n: usize) -> usize {
    3 * (1 << (n - 3)) - 1
}

pub fn cuts_on_facet(f: &TriangleFacet, n: usize) -> Result<IncidenceReport> {
    if f.n() != n {
        return Err(invalid(format!("facet lives on {} points, not {n}", f.n())));
    }
    if n < 4 {
        return Err(invalid(format!("need n >= 4, got {n}")));
    }
    let cuts: Vec<CutVector> = enumerate_cuts(n)?
        .into_iter()
        .filter(|c| f.contains_cut(c))
        .collect();
    Ok(IncidenceReport {
        facet: *f,
        count: cuts.len(),
        cuts_on_facet: cuts,
    })
}

/// Integer coefficients `b` of a hypermetric inequality
/// `sum_{i<j} b_i b_j x_ij <= 0`, normalized by `sum b_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypermetricCoefficients {
    b: Vec<i64>,
}

impl HypermetricCoefficients {
    pub fn new(b: Vec<i64>) -> Result<Self> {
        let sum: i64 = b.iter().sum();
        if sum != 1 {
            return Err(Error::InvalidCoefficients { sum });
        }
        Ok(Self { b })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.b
    }

    /// True when at most one coefficient is nonzero, i.e. the inequality is
    /// `0 <= 0`.
    pub fn is_trivial(&self) -> bool {
        self.b.iter().filter(|&&x| x != 0).count() <= 1
    }

    /// True for the triangle pattern: two entries `+1`, one `-1`, rest zero.
    pub fn is_triangle(&self) -> bool {
        let ones = self.b.iter().filter(|&&x| x == 1).count();
        let neg = self.b.iter().filter(|&&x| x == -1).count();
        let zeros = self.b.iter().filter(|&&x| x == 0).count();
        ones == 2 && neg == 1 && zeros == self.b.len() - 3
    }

    /// `sigma(1 - sigma)` with `sigma = sum_{i in S} b_i`: the value of the
    /// left-hand side on δ(S).
    pub fn cut_value(&self, shore: PointSet) -> i64 {
        let sigma: i64 = shore
            .points()
            .filter(|&p| p <= self.n())
            .map(|p| self.b[p - 1])
            .sum();
        sigma * (1 - sigma)
    }
}

/// Left-hand side `sum_{i<j} b_i b_j x_ij`, by direct summation.
pub fn hypermetric_value<T>(b: &HypermetricCoefficients, x: &[T]) -> Result<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T> + From<i64>,
{
    let n = b.n();
    if x.len() != num_pairs(n) {
        return Err(invalid(format!(
            "vector has length {}, expected C({n},2) = {}",
            x.len(),
            num_pairs(n)
        )));
    }
    let idx = PairIndexer::new(n)?;
    Ok(idx.pairs().zip(x).fold(T::zero(), |acc, ((i, j), xij)| {
        acc + T::from(b.b[i - 1] * b.b[j - 1]) * xij.clone()
    }))
}

/// Every integer `b` with `|b_i| <= bound` and `sum b_i = 1`, in
/// lexicographic order.
pub fn enumerate_hypermetric_coeffs(n: usize, bound: i64) -> Vec<HypermetricCoefficients> {
    let mut out = Vec::new();
    if n == 0 || bound < 0 {
        return out;
    }
    let mut b = vec![-bound; n];
    loop {
        if b.iter().sum::<i64>() == 1 {
            out.push(HypermetricCoefficients { b: b.clone() });
        }
        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if b[pos] < bound {
                b[pos] += 1;
                for x in &mut b[pos + 1..] {
                    *x = -bound;
                }
                break;
            }
        }
    }
}

/// Exact rank over Q of the matrix whose rows are the given cuts.
pub fn cut_rank(cuts: &[CutVector]) -> usize {
    if cuts.is_empty() {
        return 0;
    }
    let rows = cuts
        .iter()
        .map(|c| c.to_dense().into_iter().map(Into::into).collect())
        .collect();
    bareiss_rank(rows)
}

/// Nonzero cuts lying on both facets.
pub fn common_cuts(f: &TriangleFacet, g: &TriangleFacet, cuts: &[CutVector]) -> Vec<CutVector> {
    cuts.iter()
        .filter(|c| f.contains_cut(c) && g.contains_cut(c))
        .copied()
        .collect()
}

/// Whether `f ∩ g` is a face of codimension 2 of the cut cone, decided by
/// the rank of the cuts lying on both facets.
pub fn certify_cutcone_adjacency(f: &TriangleFacet, g: &TriangleFacet, n: usize) -> Result<bool> {
    if f == g {
        return Err(invalid("adjacency needs two distinct facets"));
    }
    if f.n() != n || g.n() != n {
        return Err(invalid(format!("facets must live on {n} points")));
    }
    let cuts = enumerate_cuts(n)?;
    Ok(cut_rank(&common_cuts(f, g, &cuts)) == num_pairs(n) - 2)
}

/// Rank-certified adjacency for every unordered pair of the given facets,
/// in `(a, b)` order with `a < b`.
pub fn certify_all_pairs(facets: &[TriangleFacet], n: usize) -> Result<Vec<(usize, usize, bool)>> {
    let cuts = enumerate_cuts(n)?;
    let target = num_pairs(n) - 2;
    let pairs: Vec<(usize, usize)> = (0..facets.len())
        .flat_map(|a| (a + 1..facets.len()).map(move |b| (a, b)))
        .collect();
    Ok(pairs
        .into_par_iter()
        .map(|(a, b)| {
            let rank = cut_rank(&common_cuts(&facets[a], &facets[b], &cuts));
            (a, b, rank == target)
        })
        .collect())
}
