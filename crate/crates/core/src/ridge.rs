//! The ridge graph G_n of the metric cone, its complement, the Triangle
//! structure of the complement and the quotient graph Γ_n on Triangles.

use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};
use crate::facet::{binom, enumerate_triangle_facets, triple_rank, triples, TriangleFacet};
use crate::graph::Graph;

/// Two triangle facets conflict when some coordinate carries nonzero
/// entries of opposite sign.
pub fn conflicting(f: &TriangleFacet, g: &TriangleFacet) -> bool {
    f.entries().iter().any(|&(pos, s)| {
        let t = g.sign_at(pos);
        t != 0 && t != s
    })
}

/// A graph whose vertices are the triangle facets, in enumeration order.
#[derive(Debug, Clone)]
pub struct FacetGraph {
    pub n: usize,
    pub facets: Vec<TriangleFacet>,
    pub graph: Graph,
}

/// G_n: triangle facets, adjacent iff non-conflicting.
pub fn build_ridge_graph(n: usize) -> Result<FacetGraph> {
    let mut g = build_complement(n)?;
    g.graph = g.graph.complement();
    Ok(g)
}

/// The complement of G_n: triangle facets, adjacent iff conflicting.
pub fn build_complement(n: usize) -> Result<FacetGraph> {
    if n < 4 {
        return Err(invalid(format!("ridge graph needs n >= 4, got {n}")));
    }
    let facets = enumerate_triangle_facets(n)?;
    let graph = Graph::from_fn(facets.len(), |a, b| conflicting(&facets[a], &facets[b]));
    Ok(FacetGraph { n, facets, graph })
}

/// L(K_{rows,cols}): vertex `r * cols + c`, adjacent iff same row or column.
pub fn rook_graph(rows: usize, cols: usize) -> Graph {
    Graph::from_fn(rows * cols, |a, b| {
        a / cols == b / cols || a % cols == b % cols
    })
}

/// The explicit map from the facets of the 4-point metric cone onto
/// L(K_{3,4}): T(ij;k) goes to (perfect matching containing ij, point k).
pub fn line_graph_k34_map(facets: &[TriangleFacet]) -> Vec<usize> {
    facets
        .iter()
        .map(|f| {
            let (i, j) = f.apex();
            // matchings of {1,2,3,4}: {12,34}, {13,24}, {14,23}
            let partner = if i == 1 { j } else { 10 - i - j - 1 };
            let matching = partner - 2;
            matching * 4 + (f.third() - 1)
        })
        .collect()
}

/// Neighborhood of a vertex `u` of the complement: the distinguished edge
/// `(u', u'')` and the `n - 3` four-vertex paths completing the hexagons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexagonNeighborhood {
    pub u: usize,
    pub u_prime: usize,
    pub u_double_prime: usize,
    /// Each path runs from a neighbor of `u_prime` to a neighbor of
    /// `u_double_prime`.
    pub paths: Vec<[usize; 4]>,
}

impl HexagonNeighborhood {
    pub fn size(&self) -> usize {
        2 + 4 * self.paths.len()
    }
}

/// Checks that the neighborhood of `u` in the complement ridge graph is
/// `n - 3` hexagons glued along one edge whose ends share `u`'s support.
pub fn verify_hexagon_neighborhood(gbar: &FacetGraph, u: usize) -> Result<HexagonNeighborhood> {
    let g = &gbar.graph;
    let n = gbar.n;
    if u >= g.vertex_count() {
        return Err(invalid(format!("vertex {u} out of range")));
    }
    let violation = |msg: String| Error::StructureViolation(format!("vertex {u}: {msg}"));
    let nbrs: Vec<usize> = g.neighbors(u).collect();
    if nbrs.len() != 2 + 4 * (n - 3) {
        return Err(violation(format!(
            "degree {} != {}",
            nbrs.len(),
            2 + 4 * (n - 3)
        )));
    }
    let local = g.induced(&nbrs);
    let local_degree = |t: usize| local.degree(t);

    // At n = 4 the hexagon is a bare 6-cycle and degrees cannot single out
    // the shared edge; use the support labels instead.
    let hubs: Vec<usize> = if n == 4 {
        let support = gbar.facets[u].support();
        (0..nbrs.len())
            .filter(|&t| gbar.facets[nbrs[t]].support() == support)
            .collect()
    } else {
        let max = (0..nbrs.len()).map(local_degree).max().unwrap_or(0);
        (0..nbrs.len())
            .filter(|&t| local_degree(t) == max)
            .collect()
    };
    let [a, b] = hubs[..] else {
        return Err(violation(format!("{} candidate hub vertices", hubs.len())));
    };
    if !local.has_edge(a, b) {
        return Err(violation("hub vertices are not adjacent".into()));
    }
    let (u1, u2) = (nbrs[a], nbrs[b]);
    let support = gbar.facets[u].support();
    if gbar.facets[u1].support() != support || gbar.facets[u2].support() != support {
        return Err(violation(
            "hub vertices do not share the zero pattern of u".into(),
        ));
    }
    if local_degree(a) != n - 2 || local_degree(b) != n - 2 {
        return Err(violation(
            "hub vertices must meet every hexagon once".into(),
        ));
    }

    let rest: Vec<usize> = (0..nbrs.len()).filter(|&t| t != a && t != b).collect();
    let remainder = local.induced(&rest);
    let mut paths = Vec::new();
    for comp in remainder.components() {
        if comp.len() != 4 {
            return Err(violation(format!("component of size {}", comp.len())));
        }
        let sub = remainder.induced(&comp);
        let ends: Vec<usize> = (0..4).filter(|&t| sub.degree(t) == 1).collect();
        if sub.edge_count() != 3 || ends.len() != 2 {
            return Err(violation("component is not a 4-vertex path".into()));
        }
        // walk the path
        let mut order = vec![ends[0]];
        while order.len() < 4 {
            let last = *order.last().expect("non-empty");
            let next = sub
                .neighbors(last)
                .find(|x| !order.contains(x))
                .ok_or_else(|| violation("broken path".into()))?;
            order.push(next);
        }
        let verts: Vec<usize> = order.iter().map(|&t| nbrs[rest[comp[t]]]).collect();
        let mut path = [verts[0], verts[1], verts[2], verts[3]];
        let touches = |x: usize, hub: usize| g.has_edge(x, hub);
        if touches(path[3], u1) && touches(path[0], u2) {
            path.reverse();
        }
        let closes = touches(path[0], u1)
            && touches(path[3], u2)
            && !touches(path[0], u2)
            && !touches(path[3], u1)
            && [path[1], path[2]]
                .iter()
                .all(|&x| !touches(x, u1) && !touches(x, u2));
        if !closes {
            return Err(violation(
                "path does not close a hexagon through the hub edge".into(),
            ));
        }
        paths.push(path);
    }
    if paths.len() != n - 3 {
        return Err(violation(format!(
            "{} hexagons, expected {}",
            paths.len(),
            n - 3
        )));
    }
    Ok(HexagonNeighborhood {
        u,
        u_prime: u1,
        u_double_prime: u2,
        paths,
    })
}

/// The 3-clique of the complement formed by the three facets on one 3-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub members: [usize; 3],
    pub support: [usize; 3],
}

/// Groups facets by their support 3-set.
pub fn triangles_by_support(facets: &[TriangleFacet]) -> Vec<Triangle> {
    let mut out: Vec<Triangle> = Vec::new();
    for (v, f) in facets.iter().enumerate() {
        let support = f.support();
        match out.iter_mut().find(|t| t.support == support) {
            Some(t) => {
                let slot = t
                    .members
                    .iter()
                    .position(|&m| m == usize::MAX)
                    .expect("three per support");
                t.members[slot] = v;
            }
            None => out.push(Triangle {
                members: [v, usize::MAX, usize::MAX],
                support,
            }),
        }
    }
    for t in &mut out {
        t.members.sort_unstable();
    }
    out.sort();
    out
}

/// Finds the Triangles of the complement ridge graph from the graph alone:
/// Triangle edges are those with more than two common neighbours. For
/// `n = 4` that criterion does not separate edge types and the support
/// labels are used.
pub fn find_triangles(gbar: &FacetGraph) -> Result<Vec<Triangle>> {
    if gbar.n == 4 {
        return Ok(triangles_by_support(&gbar.facets));
    }
    let g = &gbar.graph;
    let nv = g.vertex_count();
    let mut partners = vec![Vec::new(); nv];
    for (u, v) in g.edges() {
        if g.common_neighbor_count(u, v) > 2 {
            partners[u].push(v);
            partners[v].push(u);
        }
    }
    let mut seen = vec![false; nv];
    let mut out = Vec::new();
    for u in 0..nv {
        if seen[u] {
            continue;
        }
        let [a, b] = partners[u][..] else {
            return Err(Error::StructureViolation(format!(
                "vertex {u} lies on {} high-multiplicity edges",
                partners[u].len()
            )));
        };
        if !partners[a].contains(&b) {
            return Err(Error::StructureViolation(format!(
                "high-multiplicity edges at {u} do not close a 3-clique"
            )));
        }
        let mut members = [u, a, b];
        members.sort_unstable();
        let support = gbar.facets[u].support();
        if members.iter().any(|&m| gbar.facets[m].support() != support) {
            return Err(Error::StructureViolation(format!(
                "Triangle {members:?} mixes supports"
            )));
        }
        for m in members {
            seen[m] = true;
        }
        out.push(Triangle { members, support });
    }
    out.sort();
    Ok(out)
}

/// Common-neighbour counts of complement edges, split by edge type.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommonNeighborCensus {
    pub triangle_edges: BTreeSet<usize>,
    pub other_edges: BTreeSet<usize>,
}

pub fn common_neighbor_census(gbar: &FacetGraph) -> CommonNeighborCensus {
    let mut census = CommonNeighborCensus::default();
    for (u, v) in gbar.graph.edges() {
        let count = gbar.graph.common_neighbor_count(u, v);
        if gbar.facets[u].support() == gbar.facets[v].support() {
            census.triangle_edges.insert(count);
        } else {
            census.other_edges.insert(count);
        }
    }
    census
}

/// Γ_n: vertices are Triangles, adjacent when some complement edge joins them.
#[derive(Debug, Clone)]
pub struct Gamma {
    pub n: usize,
    pub triangles: Vec<Triangle>,
    pub graph: Graph,
}

/// Builds Γ_n, asserting that adjacent Triangles are joined by exactly four
/// edges forming two disjoint 2-paths.
pub fn build_gamma(gbar: &FacetGraph, triangles: &[Triangle]) -> Result<Gamma> {
    let g = &gbar.graph;
    let mut gamma = Graph::new(triangles.len());
    for (a, ta) in triangles.iter().enumerate() {
        for (b, tb) in triangles.iter().enumerate().skip(a + 1) {
            let cross: Vec<(usize, usize)> = ta
                .members
                .iter()
                .flat_map(|&x| tb.members.iter().map(move |&y| (x, y)))
                .filter(|&(x, y)| g.has_edge(x, y))
                .collect();
            match cross.len() {
                0 => {}
                4 => {
                    if !two_disjoint_two_paths(&cross) {
                        return Err(Error::StructureViolation(format!(
                            "cross edges between {:?} and {:?} are not two 2-paths",
                            ta.support, tb.support
                        )));
                    }
                    gamma.add_edge(a, b)?;
                }
                k => {
                    return Err(Error::StructureViolation(format!(
                        "{k} edges between Triangles {:?} and {:?}",
                        ta.support, tb.support
                    )))
                }
            }
        }
    }
    Ok(Gamma {
        n: gbar.n,
        triangles: triangles.to_vec(),
        graph: gamma,
    })
}

fn two_disjoint_two_paths(edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(x, y)| [x, y]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(x, y)| {
            (
                verts.binary_search(&x).expect("present"),
                verts.binary_search(&y).expect("present"),
            )
        })
        .collect();
    let Ok(h) = Graph::from_edges(verts.len(), &local) else {
        return false;
    };
    let comps = h.components();
    comps.len() == 2
        && comps.iter().all(|c| {
            let sub = h.induced(c);
            c.len() == 3 && sub.edge_count() == 2
        })
}

/// The graph on the 3-subsets of `1..=n` (lexicographic order), adjacent
/// iff they meet in two points.
pub fn johnson_graph(n: usize) -> (Graph, Vec<[usize; 3]>) {
    let sets = triples(n);
    let g = Graph::from_fn(sets.len(), |a, b| intersection(&sets[a], &sets[b]) == 2);
    (g, sets)
}

fn intersection(a: &[usize; 3], b: &[usize; 3]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Whether Triangle ↦ support 3-set is an isomorphism from Γ_n onto the
/// 2-intersection graph on 3-subsets.
pub fn verify_johnson_isomorphism(gamma: &Gamma, n: usize) -> bool {
    if gamma.triangles.len() != binom(n, 3) {
        return false;
    }
    let (johnson, _) = johnson_graph(n);
    let map: Vec<usize> = gamma
        .triangles
        .iter()
        .map(|t| {
            let [a, b, c] = t.support;
            triple_rank(a, b, c, n)
        })
        .collect();
    gamma.graph.is_isomorphism_onto(&johnson, &map)
}

/// Each vertex has exactly one vertex at distance 3, the Triangle on the
/// complementary 3-set (meaningful for n = 6).
pub fn verify_antipodal_pairing(gamma: &Gamma) -> bool {
    let universe: BTreeSet<usize> = (1..=gamma.n).collect();
    (0..gamma.triangles.len()).all(|v| {
        let far: Vec<usize> = gamma
            .graph
            .distances_from(v)
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Some(3))
            .map(|(w, _)| w)
            .collect();
        let [w] = far[..] else { return false };
        let mut complement: Vec<usize> = universe
            .iter()
            .filter(|x| !gamma.triangles[v].support.contains(x))
            .copied()
            .collect();
        complement.sort_unstable();
        complement == gamma.triangles[w].support
    })
}

/// Whether the neighbourhood of `v` in Γ_n is the 3 × (n-3) rook's graph
/// L(K_{3,n-3}) under the map {a,b,x} ↦ (point of v left out, outside point x).
pub fn neighborhood_is_rook_graph(gamma: &Gamma, v: usize) -> bool {
    let n = gamma.n;
    let sv = gamma.triangles[v].support;
    let outside: Vec<usize> = (1..=n).filter(|x| !sv.contains(x)).collect();
    let nbrs: Vec<usize> = gamma.graph.neighbors(v).collect();
    if nbrs.len() != 3 * (n - 3) {
        return false;
    }
    let mut map = Vec::with_capacity(nbrs.len());
    for &w in &nbrs {
        let sw = gamma.triangles[w].support;
        let Some(row) = sv.iter().position(|x| !sw.contains(x)) else {
            return false;
        };
        let Some(col) = outside.iter().position(|x| sw.contains(x)) else {
            return false;
        };
        map.push(row * (n - 3) + col);
    }
    gamma
        .graph
        .induced(&nbrs)
        .is_isomorphism_onto(&rook_graph(3, n - 3), &map)
}

/// Outcome of the distance-2 separation check around one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance2Report {
    pub vertex: usize,
    pub distance2_count: usize,
    /// Every distance-2 vertex has exactly four neighbours in Γ(v).
    pub all_see_four: bool,
    /// Distinct distance-2 vertices see distinct neighbour sets.
    pub sets_distinct: bool,
}

impl Distance2Report {
    pub fn holds(&self) -> bool {
        self.all_see_four && self.sets_distinct
    }
}

pub fn verify_distance2_property(gamma: &Graph, v: usize) -> Distance2Report {
    let dist = gamma.distances_from(v);
    let layer = |d: usize| -> Vec<usize> {
        dist.iter()
            .enumerate()
            .filter(|(_, x)| **x == Some(d))
            .map(|(w, _)| w)
            .collect()
    };
    let first = layer(1);
    let second = layer(2);
    let mut seen = BTreeSet::new();
    let mut all_see_four = true;
    let mut sets_distinct = true;
    for &w in &second {
        let set: Vec<usize> = first
            .iter()
            .copied()
            .filter(|&x| gamma.has_edge(w, x))
            .collect();
        all_see_four &= set.len() == 4;
        sets_distinct &= seen.insert(set);
    }
    Distance2Report {
        vertex: v,
        distance2_count: second.len(),
        all_see_four,
        sets_distinct,
    }
}

/// Intersection array `{b_0, ..., b_{d-1}; c_1, ..., c_d}` of a
/// distance-regular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    pub diameter: usize,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// Verifies distance-regularity by a full distance-partition census.
pub fn intersection_array(g: &Graph) -> Result<IntersectionArray> {
    if !g.is_connected() {
        return Err(Error::NotDistanceRegular("graph is disconnected".into()));
    }
    let nv = g.vertex_count();
    let mut diameter = None;
    // (b_i, c_i) per distance i, fixed by the first pair seen
    let mut params: Vec<Option<(usize, usize)>> = Vec::new();
    for v in 0..nv {
        let dist: Vec<usize> = g
            .distances_from(v)
            .into_iter()
            .map(|d| d.expect("connected"))
            .collect();
        let ecc = dist.iter().copied().max().unwrap_or(0);
        match diameter {
            None => diameter = Some(ecc),
            Some(d) if d != ecc => {
                return Err(Error::NotDistanceRegular(format!(
                    "vertex {v} has eccentricity {ecc}, vertex 0 has {d}"
                )))
            }
            _ => {}
        }
        params.resize(ecc + 1, None);
        for w in 0..nv {
            let i = dist[w];
            let mut down = 0;
            let mut up = 0;
            for x in g.neighbors(w) {
                if dist[x] + 1 == i {
                    down += 1;
                } else if dist[x] == i + 1 {
                    up += 1;
                }
            }
            match params[i] {
                None => params[i] = Some((up, down)),
                Some(p) if p != (up, down) => {
                    return Err(Error::NotDistanceRegular(format!(
                        "pair ({v},{w}) at distance {i} has (b,c) = ({up},{down}), expected {p:?}"
                    )))
                }
                _ => {}
            }
        }
    }
    let d = diameter.unwrap_or(0);
    let params: Vec<(usize, usize)> = params
        .into_iter()
        .map(|p| p.expect("every distance occurs"))
        .collect();
    Ok(IntersectionArray {
        diameter: d,
        b: params[..d].iter().map(|p| p.0).collect(),
        c: params[1..].iter().map(|p| p.1).collect(),
    })
}
