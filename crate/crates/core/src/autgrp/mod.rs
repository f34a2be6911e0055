//! Automorphism groups of the ridge graphs and the Sym(n) identification.

mod perm;
mod search;

pub use perm::{group_order, orbits, Perm, PermGroup, StabilizerChain};
pub use search::{automorphism_group, AutomorphismGroup, DEFAULT_VERTEX_CAP};

use crate::coords::PointPermutation;
use crate::error::{invalid, Error, Result};
use crate::facet::TriangleFacet;
use crate::ridge::{build_ridge_graph, FacetGraph};

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The permutation of facet indices induced by a point permutation.
pub fn induced_facet_perm(sigma: &PointPermutation, facets: &[TriangleFacet]) -> Result<Perm> {
    let images = facets
        .iter()
        .map(|f| f.permuted(sigma).map(|g| g.ordinal()))
        .collect::<Result<Vec<_>>>()?;
    Perm::new(images)
}

/// Images of the standard Sym(n) generators acting on the facets.
pub fn symn_facet_generators(facets: &[TriangleFacet], n: usize) -> Result<Vec<Perm>> {
    PointPermutation::symmetric_group_generators(n)
        .iter()
        .map(|s| induced_facet_perm(s, facets))
        .collect()
}

/// True iff Sym(n) acts on `g` by automorphisms through the facet labels and
/// the induced homomorphism is injective (image of order n!).
pub fn is_faithful_symn_action(g: &FacetGraph, n: usize) -> Result<bool> {
    if g.n != n {
        return Err(invalid(format!(
            "graph is labelled for n = {}, not {n}",
            g.n
        )));
    }
    let gens = symn_facet_generators(&g.facets, n)?;
    if !gens.iter().all(|p| g.graph.is_automorphism(p.images())) {
        return Ok(false);
    }
    Ok(group_order(&gens)? == factorial(n))
}

/// Outcome of the automorphism-group identification for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    pub n: usize,
    pub aut_order: u128,
    pub symn_image_order: u128,
    pub expected_order: u128,
    /// Every automorphism generator lies in the Sym(n) image.
    pub all_induced: bool,
}

/// Computes Aut(G_n) and compares it with the Sym(n) image.
///
/// For `n >= 5` the group must have order n! and every generator must be
/// induced by a point permutation; for `n = 4` the order must be 144
/// (Sym(3) × Sym(4)).
pub fn verify_theorem1(n: usize, vertex_cap: usize) -> Result<Theorem1Report> {
    if n < 4 {
        return Err(invalid(format!("need n >= 4, got {n}")));
    }
    let g = build_ridge_graph(n)?;
    let aut = automorphism_group(&g.graph, vertex_cap)?;
    let image = PermGroup::new(g.graph.vertex_count(), symn_facet_generators(&g.facets, n)?)?;
    for p in image.generators() {
        if !g.graph.is_automorphism(p.images()) {
            return Err(Error::Falsified {
                message: format!("induced permutation is not an automorphism of G_{n}"),
                witness: Some(p.images().to_vec()),
            });
        }
    }
    let expected = if n == 4 { 144 } else { factorial(n) };
    let witness = aut.group.generators().iter().find(|p| !image.contains(p));
    let report = Theorem1Report {
        n,
        aut_order: aut.order(),
        symn_image_order: image.order(),
        expected_order: expected,
        all_induced: witness.is_none(),
    };
    if report.aut_order != expected {
        return Err(Error::Falsified {
            message: format!("|Aut(G_{n})| = {}, expected {expected}", report.aut_order),
            witness: witness.map(|p| p.images().to_vec()),
        });
    }
    if n >= 5 {
        if let Some(p) = witness {
            return Err(Error::Falsified {
                message: format!("automorphism of G_{n} not induced by Sym({n})"),
                witness: Some(p.images().to_vec()),
            });
        }
        if report.symn_image_order != factorial(n) {
            return Err(Error::Falsified {
                message: format!("Sym({n}) image has order {}", report.symn_image_order),
                witness: None,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ridge::{build_complement, build_gamma, find_triangles};

    #[test]
    fn small_orders() {
        let g4 = build_ridge_graph(4).unwrap();
        assert_eq!(automorphism_group(&g4.graph, 300).unwrap().order(), 144);
        let g5 = build_complement(5).unwrap();
        assert_eq!(automorphism_group(&g5.graph, 300).unwrap().order(), 120);
    }

    #[test]
    fn symn_images() {
        for n in 4..=9 {
            let g = build_ridge_graph(n).unwrap();
            for p in symn_facet_generators(&g.facets, n).unwrap() {
                assert!(g.graph.is_automorphism(p.images()));
            }
        }
        let g5 = build_complement(5).unwrap();
        let gens = symn_facet_generators(&g5.facets, 5).unwrap();
        assert_eq!(group_order(&gens).unwrap(), 120);
        assert!(is_faithful_symn_action(&g5, 5).unwrap());
        assert!(is_faithful_symn_action(&build_complement(6).unwrap(), 6).unwrap());
        assert!(is_faithful_symn_action(&build_ridge_graph(7).unwrap(), 7).unwrap());
        assert!(is_faithful_symn_action(&g5, 6).is_err());
    }

    #[test]
    fn theorem1_small() {
        let r4 = verify_theorem1(4, 300).unwrap();
        assert_eq!(r4.aut_order, 144);
        assert_eq!(r4.symn_image_order, 24);
        assert!(!r4.all_induced);
        let r5 = verify_theorem1(5, 300).unwrap();
        assert_eq!(r5.aut_order, 120);
        assert!(r5.all_induced);
        assert!(matches!(
            verify_theorem1(5, 10),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn n6_exception() {
        let gbar = build_complement(6).unwrap();
        let gamma = build_gamma(&gbar, &find_triangles(&gbar).unwrap()).unwrap();
        let aut_gamma = automorphism_group(&gamma.graph, 300).unwrap().order();
        let aut_gbar = automorphism_group(&gbar.graph, 300).unwrap().order();
        assert_eq!((aut_gamma, aut_gbar), (1440, 720));
    }
}
