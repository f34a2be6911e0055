use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use cutmet_core::autgrp::{
    automorphism_group, factorial, is_faithful_symn_action, verify_theorem1,
};
use cutmet_core::cones::{
    certify_all_pairs, cut_rank, cuts_on_facet, enumerate_hypermetric_coeffs, hypermetric_value,
    triangle_cut_count,
};
use cutmet_core::cut::enumerate_cuts;
use cutmet_core::facet::{binom, enumerate_triangle_facets, TriangleFacet};
use cutmet_core::reflect4::build_reflection_group;
use cutmet_core::ridge::{
    build_complement, build_gamma, build_ridge_graph, common_neighbor_census, conflicting,
    find_triangles, intersection_array, line_graph_k34_map, neighborhood_is_rook_graph, rook_graph,
    verify_antipodal_pairing, verify_distance2_property, verify_hexagon_neighborhood,
    verify_johnson_isomorphism, Gamma,
};
use cutmet_core::{Error, Graph};

use crate::config::{CheckId, RunConfig};
use crate::report::{CheckRecord, Outcome, VerificationReport};

/// Largest coefficient box `(2K+1)^n` the hypermetric checks will enumerate.
pub const HYPERMETRIC_BOX_CAP: u64 = 10_000_000;

type Details = BTreeMap<String, Value>;

/// Why a check did not pass.
#[derive(Debug)]
enum Problem {
    Fail { message: String, witness: Value },
    Error(String),
}

type Verdict = Result<Details, Problem>;

fn fail(message: impl Into<String>, witness: Value) -> Problem {
    Problem::Fail {
        message: message.into(),
        witness,
    }
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::InvalidArgument(_)
            | Error::ResourceLimit { .. }
            | Error::InvalidCoefficients { .. } => Problem::Error(message),
            Error::Falsified { witness, .. } => {
                let witness = match witness {
                    Some(p) => json!({ "permutation": p }),
                    None => json!({ "detail": message }),
                };
                Problem::Fail { message, witness }
            }
            Error::StructureViolation(_)
            | Error::NotDistanceRegular(_)
            | Error::DegenerateChoice { .. } => Problem::Fail {
                witness: json!({ "detail": message }),
                message,
            },
        }
    }
}

fn details<const N: usize>(items: [(&str, Value); N]) -> Details {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn facet_json(f: &TriangleFacet) -> Value {
    let (i, j) = f.apex();
    json!({ "i": i, "j": j, "k": f.third(), "label": format!("T({i}{j};{})", f.third()) })
}

fn perm_json(images: &[usize]) -> Value {
    json!({ "permutation": images })
}

fn check_cap(vertices: usize, cap: usize) -> Result<(), Problem> {
    if vertices > cap {
        return Err(Error::ResourceLimit { vertices, cap }.into());
    }
    Ok(())
}

fn hypermetric_box_ok(n: usize, bound: i64) -> Result<(), Problem> {
    let size = (bound as u64)
        .checked_mul(2)
        .and_then(|b| b.checked_add(1))
        .and_then(|b| b.checked_pow(n as u32));
    match size {
        Some(s) if s <= HYPERMETRIC_BOX_CAP => Ok(()),
        _ => Err(Problem::Error(format!(
            "coefficient box (2*{bound}+1)^{n} exceeds the enumeration cap of {HYPERMETRIC_BOX_CAP}"
        ))),
    }
}

fn gamma_of(n: usize) -> Result<(Gamma, cutmet_core::ridge::FacetGraph), Problem> {
    let gbar = build_complement(n)?;
    let triangles = find_triangles(&gbar)?;
    Ok((build_gamma(&gbar, &triangles)?, gbar))
}

fn check_cuts(n: usize) -> Verdict {
    let cuts = enumerate_cuts(n)?;
    let expected = (1usize << (n - 1)) - 1;
    if cuts.len() != expected {
        return Err(fail(
            format!("{} cuts, expected {expected}", cuts.len()),
            json!({ "count": cuts.len() }),
        ));
    }
    let distinct: BTreeSet<u128> = cuts.iter().map(|c| c.bits()).collect();
    if distinct.len() != cuts.len() || cuts.iter().any(|c| c.is_zero()) {
        return Err(fail(
            "cut vectors are not distinct and nonzero",
            json!({ "distinct": distinct.len() }),
        ));
    }
    let facets = enumerate_triangle_facets(n)?;
    for c in &cuts {
        if let Some(f) = facets.iter().find(|f| f.value_on_cut(c) > 0) {
            return Err(fail(
                "cut violates a triangle inequality",
                json!({ "shore": c.shore().points().collect::<Vec<_>>(), "facet": facet_json(f) }),
            ));
        }
    }
    Ok(details([
        ("cuts", json!(cuts.len())),
        ("facets_tested", json!(facets.len())),
    ]))
}

fn check_facets(n: usize) -> Verdict {
    let facets = enumerate_triangle_facets(n)?;
    let expected = 3 * binom(n, 3);
    if facets.len() != expected {
        return Err(fail(
            format!("{} facets, expected {expected}", facets.len()),
            json!({ "count": facets.len() }),
        ));
    }
    for (idx, f) in facets.iter().enumerate() {
        let entries = f.entries();
        let plus = entries.iter().filter(|e| e.1 == 1).count();
        let minus = entries.iter().filter(|e| e.1 == -1).count();
        let nonzero = f.to_dense().iter().filter(|&&x| x != 0).count();
        if plus != 1 || minus != 2 || nonzero != 3 || f.ordinal() != idx {
            return Err(fail(
                "malformed triangle facet",
                json!({ "index": idx, "facet": facet_json(f) }),
            ));
        }
    }
    let distinct: BTreeSet<Vec<i64>> = facets.iter().map(|f| f.to_dense()).collect();
    if distinct.len() != facets.len() {
        return Err(fail(
            "duplicate facet vectors",
            json!({ "distinct": distinct.len() }),
        ));
    }
    Ok(details([("facets", json!(facets.len()))]))
}

fn check_incidence(n: usize) -> Verdict {
    let facets = enumerate_triangle_facets(n)?;
    let expected = triangle_cut_count(n);
    for f in &facets {
        let got = cuts_on_facet(f, n)?.count;
        if got != expected {
            return Err(fail(
                format!("facet holds {got} cuts, expected {expected}"),
                json!({ "facet": facet_json(f), "count": got }),
            ));
        }
    }
    Ok(details([
        ("cuts_per_facet", json!(expected)),
        ("facets", json!(facets.len())),
    ]))
}

/// Rank-oracle adjacency for every facet pair, compared with the sign test.
fn adjacency_agreement(n: usize, cap: usize) -> Result<(usize, usize), Problem> {
    let facets = enumerate_triangle_facets(n)?;
    check_cap(facets.len(), cap)?;
    let certified = certify_all_pairs(&facets, n)?;
    let mut adjacent = 0;
    for &(a, b, adj) in &certified {
        if adj != !conflicting(&facets[a], &facets[b]) {
            return Err(fail(
                "rank oracle disagrees with the sign test",
                json!({ "f": facet_json(&facets[a]), "g": facet_json(&facets[b]), "rank_says_adjacent": adj }),
            ));
        }
        adjacent += usize::from(adj);
    }
    Ok((certified.len(), adjacent))
}

fn check_adjacency(n: usize, cap: usize) -> Verdict {
    let (pairs, adjacent) = adjacency_agreement(n, cap)?;
    Ok(details([
        ("pairs", json!(pairs)),
        ("adjacent_pairs", json!(adjacent)),
    ]))
}

fn check_hexagons(n: usize) -> Verdict {
    let gbar = build_complement(n)?;
    let want = 2 + 4 * (n - 3);
    for u in 0..gbar.graph.vertex_count() {
        let hex = verify_hexagon_neighborhood(&gbar, u)?;
        if hex.size() != want || gbar.graph.degree(u) != want {
            return Err(fail(
                format!("vertex {u} has degree {}", gbar.graph.degree(u)),
                json!({ "vertex": u }),
            ));
        }
    }
    let mut out = details([
        ("degree", json!(want)),
        ("hexagons_per_vertex", json!(n - 3)),
    ]);
    if n == 4 {
        let g4 = build_ridge_graph(4)?;
        let map = line_graph_k34_map(&g4.facets);
        let ok = g4.graph.is_isomorphism_onto(&rook_graph(3, 4), &map);
        if !ok {
            return Err(fail(
                "G_4 is not L(K_3,4) under the matching map",
                json!({ "map": map }),
            ));
        }
        out.insert("ridge_graph_is_line_graph_k34".into(), json!(true));
    }
    Ok(out)
}

fn check_triangles(n: usize) -> Verdict {
    let gbar = build_complement(n)?;
    let triangles = find_triangles(&gbar)?;
    if triangles.len() != binom(n, 3) {
        return Err(fail(
            format!("{} Triangles", triangles.len()),
            json!({ "count": triangles.len() }),
        ));
    }
    let census = common_neighbor_census(&gbar);
    let tri: Vec<usize> = census.triangle_edges.iter().copied().collect();
    let other: Vec<usize> = census.other_edges.iter().copied().collect();
    if tri != [n - 2] || other != [2] {
        return Err(fail(
            "unexpected common-neighbour counts",
            json!({ "triangle_edges": tri, "other_edges": other }),
        ));
    }
    Ok(details([
        ("triangles", json!(triangles.len())),
        ("triangle_edge_common_neighbors", json!(n - 2)),
        ("other_edge_common_neighbors", json!(2)),
    ]))
}

fn check_gamma(n: usize, cap: usize) -> Verdict {
    let (gamma, gbar) = gamma_of(n)?;
    let array = intersection_array(&gamma.graph)?;
    let want_b: Vec<usize> = (0..3)
        .map(|i| (3 - i) * (n - 3 - i))
        .take_while(|&b| b > 0)
        .collect();
    let want_c: Vec<usize> = (1..=want_b.len()).map(|i| i * i).collect();
    if array.b != want_b || array.c != want_c {
        return Err(fail(
            "intersection array differs from J(n,3)",
            json!({ "b": array.b, "c": array.c, "expected_b": want_b, "expected_c": want_c }),
        ));
    }
    check_cap(gbar.graph.vertex_count(), cap)?;
    let aut_gamma = automorphism_group(&gamma.graph, cap)?.order();
    let aut_gbar = automorphism_group(&gbar.graph, cap)?.order();
    let expected_gamma = if n == 6 {
        2 * factorial(6)
    } else {
        factorial(n)
    };
    if aut_gamma != expected_gamma || aut_gbar != factorial(n) {
        return Err(fail(
            "automorphism group orders",
            json!({ "aut_gamma": aut_gamma.to_string(), "aut_complement": aut_gbar.to_string() }),
        ));
    }
    let d2 = verify_distance2_property(&gamma.graph, 0);
    let mut out = details([
        ("vertices", json!(gamma.graph.vertex_count())),
        ("intersection_array", json!({ "b": array.b, "c": array.c })),
        ("aut_gamma", json!(aut_gamma.to_string())),
        ("aut_complement", json!(aut_gbar.to_string())),
        ("distance2_separation", json!(d2.holds())),
    ]);
    // the separation argument needs n > 6; smaller n are reported only
    if n > 6 && !d2.holds() {
        return Err(fail(
            "distance-2 vertices do not separate the neighbourhood",
            json!({ "vertex": d2.vertex, "all_see_four": d2.all_see_four, "sets_distinct": d2.sets_distinct }),
        ));
    }
    if n == 6 {
        if !verify_antipodal_pairing(&gamma) {
            return Err(fail(
                "antipodes are not complementary triples",
                json!({ "n": 6 }),
            ));
        }
        out.insert("antipodal_pairing".into(), json!(true));
    }
    if n == 5 {
        let petersen = gamma.graph.complement();
        let ok = petersen.regular_degree() == Some(3)
            && petersen
                .edges()
                .iter()
                .all(|&(u, v)| petersen.common_neighbor_count(u, v) == 0);
        out.insert("complement_is_petersen".into(), json!(ok));
        if !ok {
            return Err(fail(
                "complement of the Triangle graph is not Petersen",
                json!({ "graph6": petersen.to_graph6() }),
            ));
        }
    }
    Ok(out)
}

fn check_johnson(n: usize) -> Verdict {
    let (gamma, _) = gamma_of(n)?;
    if !verify_johnson_isomorphism(&gamma, n) {
        return Err(fail(
            "support map is not an isomorphism onto J(n,3)",
            json!({ "graph6": gamma.graph.to_graph6() }),
        ));
    }
    if let Some(v) =
        (0..gamma.graph.vertex_count()).find(|&v| !neighborhood_is_rook_graph(&gamma, v))
    {
        return Err(fail(
            "neighbourhood is not the rook's graph",
            json!({ "vertex": v, "support": gamma.triangles[v].support }),
        ));
    }
    Ok(details([
        ("vertices", json!(gamma.graph.vertex_count())),
        ("rook_neighborhoods", json!(format!("3x{}", n - 3))),
    ]))
}

fn aut_summary(
    g: &Graph,
    n: usize,
    cap: usize,
    facet_graph: &cutmet_core::ridge::FacetGraph,
) -> Result<u128, Problem> {
    let aut = automorphism_group(g, cap)?;
    if let Some(p) = aut
        .group
        .generators()
        .iter()
        .find(|p| !g.is_automorphism(p.images()))
    {
        return Err(fail(
            "search returned a non-automorphism",
            perm_json(p.images()),
        ));
    }
    if aut.search_order != aut.order() {
        return Err(fail(
            "search order disagrees with Schreier-Sims",
            json!({ "search": aut.search_order.to_string(), "schreier_sims": aut.order().to_string() }),
        ));
    }
    if !is_faithful_symn_action(facet_graph, n)? {
        return Err(fail(
            format!("Sym({n}) does not act faithfully"),
            json!({ "n": n }),
        ));
    }
    Ok(aut.order())
}

fn check_aut(n: usize, cap: usize) -> Verdict {
    let g = build_ridge_graph(n)?;
    check_cap(g.graph.vertex_count(), cap)?;
    let gbar = build_complement(n)?;
    let a = aut_summary(&g.graph, n, cap, &g)?;
    let b = aut_summary(&gbar.graph, n, cap, &gbar)?;
    if a != b {
        return Err(fail(
            "graph and complement have different automorphism group orders",
            json!({ "aut_g": a.to_string(), "aut_complement": b.to_string() }),
        ));
    }
    Ok(details([
        ("aut_order", json!(a.to_string())),
        ("symn_order", json!(factorial(n).to_string())),
    ]))
}

fn check_theorem1(n: usize, cap: usize) -> Verdict {
    let r = verify_theorem1(n, cap)?;
    Ok(details([
        ("aut_order", json!(r.aut_order.to_string())),
        ("symn_image_order", json!(r.symn_image_order.to_string())),
        ("expected_order", json!(r.expected_order.to_string())),
        ("all_induced", json!(r.all_induced)),
    ]))
}

fn check_reflect4() -> Verdict {
    let group = build_reflection_group()?;
    if group.matrix_order() != 144 || !group.is_faithful_product_action() {
        return Err(fail(
            "reflection group is not Sym(4) x Sym(3) acting faithfully",
            json!({
                "matrix_order": group.matrix_order(),
                "ray_action_order": group.ray_action.order().to_string(),
                "restricted_orders": [group.restricted_orders.0.to_string(), group.restricted_orders.1.to_string()],
            }),
        ));
    }
    let pairs: Vec<[usize; 2]> = group
        .generators
        .iter()
        .map(|g| [g.swapped.0, g.swapped.1])
        .collect();
    Ok(details([
        ("matrix_order", json!(group.matrix_order())),
        (
            "ray_action_order",
            json!(group.ray_action.order().to_string()),
        ),
        ("orbits", json!([group.orbits.four, group.orbits.three])),
        (
            "restricted_orders",
            json!([
                group.restricted_orders.0.to_string(),
                group.restricted_orders.1.to_string()
            ]),
        ),
        ("generator_swaps", json!(pairs)),
    ]))
}

fn check_hypermetric(n: usize, bound: i64) -> Verdict {
    hypermetric_box_ok(n, bound)?;
    let cuts = enumerate_cuts(n)?;
    let dense: Vec<Vec<i64>> = cuts.iter().map(|c| c.to_dense()).collect();
    let coeffs = enumerate_hypermetric_coeffs(n, bound);
    let bad = coeffs.par_iter().find_map_any(|b| {
        cuts.iter().zip(&dense).find_map(|(c, x)| {
            let direct = hypermetric_value(b, x).ok()?;
            let closed = b.cut_value(c.shore());
            (direct != closed || direct > 0).then(|| {
                json!({
                    "b": b.coefficients(),
                    "shore": c.shore().points().collect::<Vec<_>>(),
                    "direct": direct,
                    "closed_form": closed,
                })
            })
        })
    });
    if let Some(w) = bad {
        return Err(fail(
            "hypermetric value differs from sigma(1-sigma) or is positive",
            w,
        ));
    }
    Ok(details([
        ("coefficient_vectors", json!(coeffs.len())),
        ("pairs_checked", json!(coeffs.len() * cuts.len())),
    ]))
}

fn check_theorem2(n: usize, bound: i64, cap: usize) -> Verdict {
    let facets = enumerate_triangle_facets(n)?;
    let d = binom(n, 2);
    let max = triangle_cut_count(n);
    for f in &facets {
        let on = cuts_on_facet(f, n)?;
        let rank = cut_rank(&on.cuts_on_facet);
        if on.count != max || rank != d - 1 {
            return Err(fail(
                "triangle facet is not a facet of the cut cone with the expected cut count",
                json!({ "facet": facet_json(f), "count": on.count, "rank": rank }),
            ));
        }
    }
    hypermetric_box_ok(n, bound)?;
    let cuts = enumerate_cuts(n)?;
    let coeffs = enumerate_hypermetric_coeffs(n, bound);
    let (mut at_max, mut below) = (0usize, 0usize);
    for b in coeffs.iter().filter(|b| !b.is_trivial()) {
        let tight = cuts.iter().filter(|c| b.cut_value(c.shore()) == 0).count();
        let maximal = tight == max;
        if tight > max || (maximal && !b.is_triangle()) {
            return Err(fail(
                "non-triangle hypermetric inequality reaches the maximum cut count",
                json!({ "b": b.coefficients(), "tight_cuts": tight }),
            ));
        }
        if b.is_triangle() && !maximal {
            return Err(fail(
                "triangle inequality below the maximum",
                json!({ "b": b.coefficients(), "tight_cuts": tight }),
            ));
        }
        if maximal {
            at_max += 1;
        } else {
            below += 1;
        }
    }
    let (pairs, adjacent) = adjacency_agreement(n, cap)?;
    Ok(details([
        ("max_cuts_on_facet", json!(max)),
        ("triangle_facet_rank", json!(d - 1)),
        ("maximizers_in_slice", json!(at_max)),
        ("others_in_slice", json!(below)),
        ("adjacency_pairs", json!(pairs)),
        ("adjacent_pairs", json!(adjacent)),
    ]))
}

fn applies(id: CheckId, n: usize) -> bool {
    !(matches!(id, CheckId::Gamma | CheckId::Johnson) && n == 4)
}

fn parameters(id: CheckId, config: &RunConfig) -> Details {
    let mut p = Details::new();
    if matches!(id, CheckId::Hypermetric | CheckId::Theorem2) {
        p.insert("hypermetric_bound".into(), json!(config.hypermetric_bound));
    }
    if matches!(
        id,
        CheckId::Adjacency | CheckId::Gamma | CheckId::Aut | CheckId::Theorem1 | CheckId::Theorem2
    ) {
        p.insert("vertex_cap".into(), json!(config.aut_vertex_cap));
    }
    p
}

fn dispatch(id: CheckId, n: usize, config: &RunConfig) -> Verdict {
    let cap = config.aut_vertex_cap;
    let bound = config.hypermetric_bound;
    match id {
        CheckId::Cuts => check_cuts(n),
        CheckId::Facets => check_facets(n),
        CheckId::Incidence => check_incidence(n),
        CheckId::Adjacency => check_adjacency(n, cap),
        CheckId::Hexagons => check_hexagons(n),
        CheckId::Triangles => check_triangles(n),
        CheckId::Gamma => check_gamma(n, cap),
        CheckId::Johnson => check_johnson(n),
        CheckId::Aut => check_aut(n, cap),
        CheckId::Theorem1 => check_theorem1(n, cap),
        CheckId::Reflect4 => check_reflect4(),
        CheckId::Hypermetric => check_hypermetric(n, bound),
        CheckId::Theorem2 => check_theorem2(n, bound, cap),
    }
}

/// Runs one check at one `n` and records the outcome.
pub fn run_check(id: CheckId, n: usize, config: &RunConfig) -> CheckRecord {
    let start = Instant::now();
    let mut record = CheckRecord {
        id,
        claim: id.claim().to_string(),
        n,
        parameters: parameters(id, config),
        outcome: Outcome::Skipped,
        details: Details::new(),
        message: None,
        witness: None,
        wall_time_ms: 0.0,
    };
    if !applies(id, n) {
        record.message = Some("Triangles are degenerate at n = 4".into());
        return record;
    }
    match dispatch(id, n, config) {
        Ok(d) => {
            record.outcome = Outcome::Pass;
            record.details = d;
        }
        Err(Problem::Fail { message, witness }) => {
            record.outcome = Outcome::Fail;
            record.message = Some(message);
            record.witness = Some(witness);
        }
        Err(Problem::Error(message)) => {
            record.outcome = Outcome::Error;
            record.message = Some(message);
        }
    }
    record.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

/// The (check, n) jobs a configuration selects, in report order. The
/// four-point reflection check runs once, at n = 4, when that is in range.
pub fn planned_jobs(config: &RunConfig) -> Vec<(CheckId, usize)> {
    config
        .n_values()
        .flat_map(|n| {
            config
                .checks
                .iter()
                .filter(move |&&id| id != CheckId::Reflect4 || n == 4)
                .map(move |&id| (id, n))
        })
        .collect()
}

/// Executes the selected checks for every `n` in range. Jobs run in
/// parallel; the report lists them in `planned_jobs` order.
pub fn run_verify(config: &RunConfig) -> VerificationReport {
    let jobs = planned_jobs(config);
    let records: Vec<CheckRecord> = jobs
        .par_iter()
        .map(|&(id, n)| run_check(id, n, config))
        .collect();
    VerificationReport::new(config.n_min, config.n_max, records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_map_to_outcomes() {
        let falsified = Problem::from(Error::Falsified {
            message: "x".into(),
            witness: Some(vec![1, 0]),
        });
        assert!(
            matches!(falsified, Problem::Fail { ref witness, .. } if witness["permutation"] == json!([1, 0]))
        );
        // failures without a permutation still carry a witness
        let bare = Problem::from(Error::Falsified {
            message: "x".into(),
            witness: None,
        });
        assert!(matches!(bare, Problem::Fail { ref witness, .. } if !witness.is_null()));
        for e in [
            Error::StructureViolation("v".into()),
            Error::NotDistanceRegular("d".into()),
            Error::DegenerateChoice { rank: 4, needed: 5 },
        ] {
            assert!(matches!(Problem::from(e), Problem::Fail { .. }));
        }
        let capped = Problem::from(Error::ResourceLimit {
            vertices: 360,
            cap: 252,
        });
        assert!(matches!(capped, Problem::Error(_)));
    }

    #[test]
    fn hypermetric_box_cap() {
        assert!(hypermetric_box_ok(8, 3).is_ok());
        assert!(matches!(hypermetric_box_ok(9, 3), Err(Problem::Error(_))));
        assert!(matches!(
            hypermetric_box_ok(16, i64::MAX),
            Err(Problem::Error(_))
        ));
    }

    #[test]
    fn job_plan() {
        let config = RunConfig {
            n_min: 4,
            n_max: 5,
            ..RunConfig::default()
        };
        let jobs = planned_jobs(&config);
        assert_eq!(jobs.len(), 13 + 12);
        assert_eq!(jobs.iter().filter(|j| j.0 == CheckId::Reflect4).count(), 1);
        let skipped = run_check(CheckId::Gamma, 4, &config);
        assert_eq!(skipped.outcome, Outcome::Skipped);
    }
}
