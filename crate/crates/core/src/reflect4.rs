//! The symmetry group of the 4-point metric cone (equal to the 4-point cut
//! cone) as a group generated by five reflections, each swapping two
//! extreme rays within one Sym(4)-orbit.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Zero};

use crate::autgrp::{Perm, PermGroup};
use crate::coords::{apply_permutation, PointPermutation};
use crate::cut::CutVector;
use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, primitive_integer_vector, rational, Rational, RationalMatrix};

/// The seven nonzero cuts of K_4 in coordinate order `12,13,14,23,24,34`.
pub const RAY_TABLE: [[i64; 6]; 7] = [
    [0, 0, 1, 0, 1, 1],
    [0, 1, 1, 1, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [1, 0, 1, 1, 0, 1],
    [1, 1, 0, 0, 1, 1],
    [1, 0, 0, 1, 1, 0],
    [1, 1, 1, 0, 0, 0],
];

/// Ray pairs (1-based) whose transpositions generate the group: chains
/// through the 4-orbit and through the 3-orbit.
pub const GENERATOR_PAIRS: [(usize, usize); 5] = [(1, 3), (3, 6), (6, 7), (2, 4), (4, 5)];

const MAX_GROUP_ELEMENTS: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalVector6(pub [Rational; 6]);

impl RationalVector6 {
    pub fn from_integers(v: [i64; 6]) -> Self {
        Self(v.map(rational))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.clone().map(|x| -x))
    }

    /// Integer entries, if every entry is integral.
    pub fn to_integers(&self) -> Option<[i64; 6]> {
        let mut out = [0i64; 6];
        for (o, x) in out.iter_mut().zip(&self.0) {
            if !x.is_integer() {
                return None;
            }
            *o = i64::try_from(x.to_integer()).ok()?;
        }
        Some(out)
    }
}

/// A 6×6 exact orthogonal matrix acting on the coordinates of R^6.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrthogonalMap6(RationalMatrix);

impl OrthogonalMap6 {
    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn apply(&self, v: &RationalVector6) -> RationalVector6 {
        let out = self.0.mul_vec(&v.0).expect("6x6 times 6");
        RationalVector6(out.try_into().expect("length 6"))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn is_orthogonal(&self) -> bool {
        (&self.0.transpose() * &self.0).is_identity()
    }

    pub fn is_involution(&self) -> bool {
        (&self.0 * &self.0).is_identity()
    }

    /// The permutation of `rays` induced by this map (0-based), if any.
    pub fn ray_permutation(&self, rays: &[RationalVector6]) -> Option<Perm> {
        let images = rays
            .iter()
            .map(|r| {
                let image = self.apply(r);
                rays.iter().position(|s| *s == image)
            })
            .collect::<Option<Vec<_>>>()?;
        Perm::new(images).ok()
    }

    pub fn determinant(&self) -> Rational {
        // product of pivots of an elimination over Q
        let mut m = self.0.clone();
        let n = m.rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                det = -det;
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            for r in c + 1..n {
                let factor = m.get(r, c) / &pivot;
                for j in c..n {
                    let x = m.get(r, j) - &factor * m.get(c, j);
                    m.set(r, j, x);
                }
            }
        }
        det
    }
}

pub fn ray_table() -> Vec<RationalVector6> {
    RAY_TABLE
        .iter()
        .map(|&r| RationalVector6::from_integers(r))
        .collect()
}

/// The ray table as cut vectors on four points.
pub fn ray_cuts() -> Result<Vec<CutVector>> {
    let all = crate::cut::enumerate_cuts(4)?;
    RAY_TABLE
        .iter()
        .map(|row| {
            all.iter()
                .find(|c| c.to_dense() == row)
                .copied()
                .ok_or_else(|| invalid(format!("{row:?} is not a cut")))
        })
        .collect()
}

/// The two Sym(4)-orbits on the rays, as sorted 1-based ray labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayOrbits {
    pub four: Vec<usize>,
    pub three: Vec<usize>,
}

pub fn symn_orbits(rays: &[RationalVector6]) -> Result<RayOrbits> {
    let ints: Vec<[i64; 6]> = rays
        .iter()
        .map(|r| {
            r.to_integers()
                .ok_or_else(|| invalid("rays must be integral"))
        })
        .collect::<Result<_>>()?;
    let gens = PointPermutation::symmetric_group_generators(4);
    let mut label = vec![usize::MAX; ints.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..ints.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        let mut members = vec![start + 1];
        while let Some(r) = queue.pop_front() {
            for s in &gens {
                let image = apply_permutation(s, &ints[r])?;
                let t = ints
                    .iter()
                    .position(|x| *x == image[..])
                    .ok_or_else(|| invalid("ray set is not Sym(4)-invariant"))?;
                if label[t] == usize::MAX {
                    label[t] = id;
                    members.push(t + 1);
                    queue.push_back(t);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let [a, b] = <[Vec<usize>; 2]>::try_from(orbits)
        .map_err(|o| invalid(format!("expected 2 orbits, found {}", o.len())))?;
    let (four, three) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    Ok(RayOrbits { four, three })
}

/// A nonzero vector orthogonal to five linearly independent rays,
/// normalized to a primitive integer vector with positive leading entry.
pub fn kernel_vector(rays: &[RationalVector6]) -> Result<RationalVector6> {
    if rays.len() != 5 {
        return Err(invalid(format!("need 5 rays, got {}", rays.len())));
    }
    let m = RationalMatrix::from_rows(rays.iter().map(|r| r.0.to_vec()).collect())?;
    let rank = m.rank();
    if rank < 5 {
        return Err(Error::DegenerateChoice { rank, needed: 5 });
    }
    let kernel = m.kernel();
    let v = primitive_integer_vector(&kernel[0]).expect("kernel basis vectors are nonzero");
    let entries: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
    Ok(RationalVector6(entries.try_into().expect("length 6")))
}

/// Matrix of `s(alpha) v = v - 2 <v,alpha>/<alpha,alpha> alpha`.
pub fn reflection(alpha: &RationalVector6) -> Result<OrthogonalMap6> {
    if alpha.is_zero() {
        return Err(invalid("reflection needs a nonzero vector"));
    }
    let norm = alpha.dot(alpha);
    let mut m = RationalMatrix::identity(6);
    for r in 0..6 {
        for c in 0..6 {
            let x = m.get(r, c) - rational(2) * &alpha.0[r] * &alpha.0[c] / &norm;
            m.set(r, c, x);
        }
    }
    Ok(OrthogonalMap6(m))
}

/// One of the generating reflections.
#[derive(Debug, Clone)]
pub struct ReflectionGenerator {
    /// 1-based ray labels swapped by the reflection.
    pub swapped: (usize, usize),
    pub alpha: RationalVector6,
    pub map: OrthogonalMap6,
    pub ray_perm: Perm,
}

/// The reflection in the hyperplane spanned by the five rays other than
/// `r_i` and `r_j`, checked to permute the rays as the transposition.
pub fn reflection_for_transposition(i: usize, j: usize) -> Result<ReflectionGenerator> {
    if !(1..=7).contains(&i) || !(1..=7).contains(&j) || i == j {
        return Err(invalid(format!("({i},{j}) is not a pair of ray labels")));
    }
    let rays = ray_table();
    let others: Vec<RationalVector6> = (1..=7)
        .filter(|&l| l != i && l != j)
        .map(|l| rays[l - 1].clone())
        .collect();
    let alpha = kernel_vector(&others)?;
    let map = reflection(&alpha)?;
    let ray_perm = map.ray_permutation(&rays).ok_or_else(|| Error::Falsified {
        message: format!("reflection for (r{i}, r{j}) does not permute the rays"),
        witness: None,
    })?;
    let mut expected: Vec<usize> = (0..7).collect();
    expected.swap(i - 1, j - 1);
    if ray_perm.images() != expected {
        return Err(Error::Falsified {
            message: format!("reflection for (r{i}, r{j}) acts as {ray_perm:?}"),
            witness: Some(ray_perm.images().to_vec()),
        });
    }
    Ok(ReflectionGenerator {
        swapped: (i, j),
        alpha,
        map,
        ray_perm,
    })
}

/// The reflection group and its action on the rays.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    pub generators: Vec<ReflectionGenerator>,
    pub elements: Vec<OrthogonalMap6>,
    pub ray_action: PermGroup,
    pub orbits: RayOrbits,
    /// Orders of the action restricted to the 4-orbit and the 3-orbit.
    pub restricted_orders: (u128, u128),
}

impl ReflectionGroup {
    pub fn matrix_order(&self) -> usize {
        self.elements.len()
    }

    /// The action on the rays is Sym(4) × Sym(3) and the matrix group maps
    /// isomorphically onto it.
    pub fn is_faithful_product_action(&self) -> bool {
        self.restricted_orders == (24, 6)
            && self.ray_action.order() == 144
            && self.matrix_order() as u128 == self.ray_action.order()
    }
}

fn restrict(p: &Perm, orbit: &[usize]) -> Option<Perm> {
    let images = orbit
        .iter()
        .map(|&r| orbit.iter().position(|&s| s == p.apply(r - 1) + 1))
        .collect::<Option<Vec<_>>>()?;
    Perm::new(images).ok()
}

pub fn build_reflection_group() -> Result<ReflectionGroup> {
    let rays = ray_table();
    let orbits = symn_orbits(&rays)?;
    let generators = GENERATOR_PAIRS
        .iter()
        .map(|&(i, j)| reflection_for_transposition(i, j))
        .collect::<Result<Vec<_>>>()?;
    for g in &generators {
        if !g.map.is_orthogonal() || !g.map.is_involution() || g.map.determinant() != rational(-1) {
            return Err(Error::Falsified {
                message: format!("map for {:?} is not an orthogonal reflection", g.swapped),
                witness: None,
            });
        }
    }

    let identity = OrthogonalMap6(RationalMatrix::identity(6));
    let mut seen: HashSet<OrthogonalMap6> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = x.compose(&g.map);
            if seen.insert(y.clone()) {
                if seen.len() > MAX_GROUP_ELEMENTS {
                    return Err(Error::Falsified {
                        message: format!("closure exceeded {MAX_GROUP_ELEMENTS} elements"),
                        witness: None,
                    });
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    for m in &elements {
        if !m.is_orthogonal() || m.ray_permutation(&rays).is_none() {
            return Err(Error::Falsified {
                message: "group element does not permute the rays orthogonally".into(),
                witness: None,
            });
        }
    }

    let perms: Vec<Perm> = generators.iter().map(|g| g.ray_perm.clone()).collect();
    let ray_action = PermGroup::new(7, perms.clone())?;
    let restricted = |orbit: &[usize]| -> Result<u128> {
        let r = perms
            .iter()
            .map(|p| restrict(p, orbit))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Falsified {
                message: format!("generator does not preserve orbit {orbit:?}"),
                witness: None,
            })?;
        Ok(PermGroup::new(orbit.len(), r)?.order())
    };
    let restricted_orders = (restricted(&orbits.four)?, restricted(&orbits.three)?);
    Ok(ReflectionGroup {
        generators,
        elements,
        ray_action,
        orbits,
        restricted_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::cut_rank;
    use crate::cut::enumerate_cuts;

    fn alpha45() -> RationalVector6 {
        RationalVector6::from_integers([0, -1, 1, 1, -1, 0])
    }

    #[test]
    fn rays_are_the_nonzero_cuts() {
        let mut table: Vec<Vec<i64>> = RAY_TABLE.iter().map(|r| r.to_vec()).collect();
        let mut cuts: Vec<Vec<i64>> = enumerate_cuts(4)
            .unwrap()
            .iter()
            .map(|c| c.to_dense())
            .collect();
        table.sort();
        cuts.sort();
        assert_eq!(table, cuts);
        assert_eq!(
            ray_table()[0],
            RationalVector6::from_integers([0, 0, 1, 0, 1, 1])
        );
        assert_eq!(
            ray_table()[3],
            RationalVector6::from_integers([1, 0, 1, 1, 0, 1])
        );
        assert_eq!(cut_rank(&ray_cuts().unwrap()), 6);
    }

    #[test]
    fn orbits() {
        let o = symn_orbits(&ray_table()).unwrap();
        assert_eq!(o.four, vec![1, 3, 6, 7]);
        assert_eq!(o.three, vec![2, 4, 5]);
    }

    #[test]
    fn kernel_for_r4_r5() {
        let rays = ray_table();
        let five: Vec<_> = [0, 1, 2, 5, 6].iter().map(|&i| rays[i].clone()).collect();
        let k = kernel_vector(&five).unwrap();
        assert!(k == alpha45() || k == alpha45().neg());
    }

    #[test]
    fn kernel_rejects_dependent_rays() {
        let rays = ray_table();
        let dup = vec![
            rays[0].clone(),
            rays[0].clone(),
            rays[1].clone(),
            rays[2].clone(),
            rays[3].clone(),
        ];
        assert_eq!(
            kernel_vector(&dup).unwrap_err(),
            Error::DegenerateChoice { rank: 4, needed: 5 }
        );
        // a row equal to the sum of two others
        let sum = RationalVector6(std::array::from_fn(|c| &rays[0].0[c] + &rays[2].0[c]));
        let dependent = vec![
            rays[0].clone(),
            rays[2].clone(),
            sum,
            rays[4].clone(),
            rays[5].clone(),
        ];
        assert!(matches!(
            kernel_vector(&dependent),
            Err(Error::DegenerateChoice { .. })
        ));
    }

    #[test]
    fn kernel_orthogonal_without_r1_r3() {
        let rays = ray_table();
        let five: Vec<_> = [1, 3, 4, 5, 6].iter().map(|&i| rays[i].clone()).collect();
        let k = kernel_vector(&five).unwrap();
        for r in &five {
            assert!(k.dot(r).is_zero());
        }
    }

    #[test]
    fn reflection_properties() {
        let a = alpha45();
        let s = reflection(&a).unwrap();
        assert_eq!(s.apply(&a), a.neg());
        let perp = RationalVector6::from_integers([1, 1, 1, 0, 0, 0]);
        assert!(perp.dot(&a).is_zero());
        assert_eq!(s.apply(&perp), perp);
        assert!(s.is_orthogonal() && s.is_involution());
        assert_eq!(s.determinant(), rational(-1));
        let rays = ray_table();
        let p = s.ray_permutation(&rays).unwrap();
        assert_eq!(p.images(), &[0, 1, 2, 4, 3, 5, 6]);
        assert!(reflection(&RationalVector6::from_integers([0; 6])).is_err());
    }

    #[test]
    fn cross_orbit_pair_fails() {
        assert!(matches!(
            reflection_for_transposition(1, 2),
            Err(Error::Falsified { .. }) | Err(Error::DegenerateChoice { .. })
        ));
    }

    #[test]
    fn group_of_order_144() {
        let g = build_reflection_group().unwrap();
        assert_eq!(g.matrix_order(), 144);
        assert_eq!(g.ray_action.order(), 144);
        assert_eq!(g.restricted_orders, (24, 6));
        assert!(g.is_faithful_product_action());
        for m in &g.elements {
            assert!(m.is_orthogonal());
        }
    }
}
