//! Automorphism group search by colour refinement with individualization.
//!
//! The first path of the search tree individualizes the first vertex of the
//! first non-singleton cell at each level, giving base points `b_0, b_1, ...`.
//! Working from the deepest level up, the orbit of `b_k` under the pointwise
//! stabilizer of `b_0..b_{k-1}` is completed by looking, for each candidate
//! `v` in the target cell, for a leaf below `v` equivalent to the first leaf.
//! The group order is the product of those orbit lengths.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::perm::{orbits, Perm, PermGroup};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of vertices handed to the search.
pub const DEFAULT_VERTEX_CAP: usize = 252;

/// Automorphism group with search statistics.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub group: PermGroup,
    /// Product of base-orbit lengths found by the search.
    pub search_order: u128,
    pub base: Vec<usize>,
    pub nodes_visited: usize,
}

impl AutomorphismGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }
}

struct Colouring {
    colours: Vec<u32>,
    cells: usize,
}

impl Colouring {
    fn is_discrete(&self) -> bool {
        self.cells == self.colours.len()
    }

    fn target_cell(&self) -> Vec<usize> {
        let mut size = vec![0usize; self.cells];
        for &c in &self.colours {
            size[c as usize] += 1;
        }
        let Some(target) = size.iter().position(|&s| s > 1) else {
            return Vec::new();
        };
        (0..self.colours.len())
            .filter(|&v| self.colours[v] as usize == target)
            .collect()
    }

    fn individualized(&self, v: usize) -> Self {
        let c = self.colours[v];
        let colours = self
            .colours
            .iter()
            .enumerate()
            .map(|(w, &x)| {
                if x > c || (x == c && w != v) {
                    x + 1
                } else {
                    x
                }
            })
            .collect();
        Self {
            colours,
            cells: self.cells + 1,
        }
    }
}

struct Searcher<'a> {
    graph: &'a Graph,
    adj: Vec<Vec<usize>>,
    nodes: usize,
}

struct PathNode {
    colouring: Colouring,
    cell: Vec<usize>,
    child_trace: u64,
}

impl<'a> Searcher<'a> {
    /// Refines to the coarsest equitable colouring finer than the input.
    /// The returned trace hashes every splitting round; it is invariant under
    /// relabelling of the graph.
    fn refine(&mut self, c: &mut Colouring) -> u64 {
        self.nodes += 1;
        let n = c.colours.len();
        let mut hasher = DefaultHasher::new();
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = Vec::with_capacity(n);
        loop {
            sigs.clear();
            for v in 0..n {
                let mut nb: Vec<u32> = self.adj[v].iter().map(|&w| c.colours[w]).collect();
                nb.sort_unstable();
                sigs.push((c.colours[v], nb, v));
            }
            sigs.sort_unstable();
            let mut next = 0u32;
            for idx in 0..n {
                if idx > 0 && (sigs[idx].0, &sigs[idx].1) != (sigs[idx - 1].0, &sigs[idx - 1].1) {
                    next += 1;
                    (sigs[idx - 1].0, &sigs[idx - 1].1).hash(&mut hasher);
                }
                c.colours[sigs[idx].2] = next;
            }
            let cells = if n == 0 { 0 } else { next as usize + 1 };
            cells.hash(&mut hasher);
            if cells == c.cells {
                break;
            }
            c.cells = cells;
        }
        hasher.finish()
    }

    fn leaf_perm(&self, first_leaf: &[usize], leaf: &Colouring) -> Option<Perm> {
        // first_leaf[c] = vertex with colour c on the first path
        let mut images = vec![0; first_leaf.len()];
        for (v, &c) in leaf.colours.iter().enumerate() {
            images[first_leaf[c as usize]] = v;
        }
        self.graph
            .is_automorphism(&images)
            .then(|| Perm::from_vec_unchecked(images))
    }

    fn descend(
        &mut self,
        path: &[PathNode],
        first_leaf: &[usize],
        c: Colouring,
        level: usize,
    ) -> Option<Perm> {
        if level == path.len() {
            return if c.is_discrete() {
                self.leaf_perm(first_leaf, &c)
            } else {
                None
            };
        }
        let cell = c.target_cell();
        if cell.len() != path[level].cell.len() {
            return None;
        }
        for w in cell {
            let mut child = c.individualized(w);
            if self.refine(&mut child) != path[level].child_trace {
                continue;
            }
            if let Some(p) = self.descend(path, first_leaf, child, level + 1) {
                return Some(p);
            }
        }
        None
    }
}

fn orbit_of(point: usize, degree: usize, gens: &[Perm]) -> Vec<usize> {
    orbits(degree, gens)
        .into_iter()
        .find(|o| o.binary_search(&point).is_ok())
        .expect("every point lies in an orbit")
}

/// Full automorphism group of `graph`: generators and exact order.
pub fn automorphism_group(graph: &Graph, vertex_cap: usize) -> Result<AutomorphismGroup> {
    let n = graph.vertex_count();
    if n > vertex_cap {
        return Err(Error::ResourceLimit {
            vertices: n,
            cap: vertex_cap,
        });
    }
    let mut s = Searcher {
        graph,
        adj: (0..n).map(|v| graph.neighbors(v).collect()).collect(),
        nodes: 0,
    };
    let mut root = Colouring {
        colours: vec![0; n],
        cells: usize::from(n > 0),
    };
    s.refine(&mut root);

    let mut path = Vec::new();
    let mut current = root;
    while !current.is_discrete() {
        let cell = current.target_cell();
        let mut child = current.individualized(cell[0]);
        let child_trace = s.refine(&mut child);
        path.push(PathNode {
            colouring: current,
            cell,
            child_trace,
        });
        current = child;
    }
    let mut first_leaf = vec![0; n];
    for (v, &c) in current.colours.iter().enumerate() {
        first_leaf[c as usize] = v;
    }

    let mut gens: Vec<Perm> = Vec::new();
    let mut search_order: u128 = 1;
    for k in (0..path.len()).rev() {
        let base = path[k].cell[0];
        let mut orbit = orbit_of(base, n, &gens);
        let mut ruled_out = vec![false; n];
        for idx in 0..path[k].cell.len() {
            let v = path[k].cell[idx];
            if orbit.binary_search(&v).is_ok() || ruled_out[v] {
                continue;
            }
            let mut child = path[k].colouring.individualized(v);
            let found = if s.refine(&mut child) == path[k].child_trace {
                s.descend(&path, &first_leaf, child, k + 1)
            } else {
                None
            };
            match found {
                Some(p) => {
                    debug_assert_eq!(p.apply(base), v);
                    gens.push(p);
                    orbit = orbit_of(base, n, &gens);
                }
                None => {
                    for w in orbit_of(v, n, &gens) {
                        ruled_out[w] = true;
                    }
                }
            }
        }
        search_order *= orbit.len() as u128;
    }

    let base = path.iter().map(|p| p.cell[0]).collect();
    Ok(AutomorphismGroup {
        group: PermGroup::new(n, gens)?,
        search_order,
        base,
        nodes_visited: s.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ridge::rook_graph;

    fn cycle_graph(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| (v - u) % n == 1 || (u + n - v) % n == 1)
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn check(g: &Graph, want: u128) {
        let aut = automorphism_group(g, 1000).unwrap();
        assert_eq!(aut.search_order, want);
        assert_eq!(aut.order(), want);
        for p in aut.group.generators() {
            assert!(g.is_automorphism(p.images()));
        }
    }

    #[test]
    fn small_graphs() {
        check(&Graph::new(0), 1);
        check(&Graph::new(1), 1);
        check(&Graph::new(5), 120);
        check(&Graph::from_fn(6, |_, _| true), 720);
        check(&cycle_graph(7), 14);
        check(&petersen(), 120);
        check(&rook_graph(3, 4), 144);
        check(&rook_graph(3, 3), 72);
        // path on 4 vertices
        check(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), 2);
        // disjoint union of two triangles and an edge
        check(
            &Graph::from_edges(8, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7)])
                .unwrap(),
            144,
        );
    }

    #[test]
    fn asymmetric_graph() {
        // smallest asymmetric tree (7 vertices)
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        check(&g, 1);
    }

    #[test]
    fn cap_enforced() {
        let err = automorphism_group(&Graph::new(20), 10).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceLimit {
                vertices: 20,
                cap: 10
            }
        );
    }
}
