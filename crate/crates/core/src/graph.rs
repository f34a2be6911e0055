//! Dense simple graphs with bitset adjacency, plus graph6 and edge-list
//! serialization.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{invalid, Result};

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({} vertices, {} edges)", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edges are the pairs satisfying `adjacent`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set(u, v);
                    g.set(v, u);
                }
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(invalid(format!("edge ({u},{v}) outside 0..{}", self.n)));
        }
        if u == v {
            return Err(invalid(format!("loop at {u}")));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighbors(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Subgraph induced on `vertices`; vertex `t` of the result is `vertices[t]`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |a, b| {
            self.has_edge(vertices[a], vertices[b])
        })
    }

    /// Relabeled copy: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.n);
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v]);
            g.set(perm[v], perm[u]);
        }
        g
    }

    /// Whether `perm` (0-based images) maps edges onto edges.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n
            && self
                .edges()
                .iter()
                .all(|&(u, v)| self.has_edge(perm[u], perm[v]))
    }

    /// Whether `map` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism_onto(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &x in map {
            if x >= self.n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        (0..self.n)
            .all(|u| (u + 1..self.n).all(|v| self.has_edge(u, v) == other.has_edge(map[u], map[v])))
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .distances_from(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            comp.sort_unstable();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Standard graph6 encoding (no trailing newline).
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        let n = self.n as u64;
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            out.extend([126, 126]);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Self> {
        let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(invalid("graph6 bytes must lie in 63..=126"));
        }
        let (n, body) = match bytes {
            [126, 126, rest @ ..] if rest.len() >= 6 => (
                rest[..6]
                    .iter()
                    .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize),
                &rest[6..],
            ),
            [126, rest @ ..] if rest.len() >= 3 => (
                rest[..3]
                    .iter()
                    .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize),
                &rest[3..],
            ),
            [first, rest @ ..] if *first != 126 => ((first - 63) as usize, rest),
            _ => return Err(invalid("truncated graph6 header")),
        };
        let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if body.len() != needed {
            return Err(invalid(format!(
                "graph6 body has {} bytes, expected {needed}",
                body.len()
            )));
        }
        let mut g = Self::new(n);
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[bit / 6] - 63;
                if byte >> (5 - bit % 6) & 1 == 1 {
                    g.set(i, j);
                    g.set(j, i);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// One `u v` line per edge, 0-based, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").expect("writing to a String");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn known_graph6_strings() {
        // Reference encodings from the format description.
        assert_eq!(Graph::new(0).to_graph6(), "?");
        assert_eq!(Graph::from_edges(2, &[(0, 1)]).unwrap().to_graph6(), "A_");
        assert_eq!(petersen().to_graph6(), "IheA@GUAo");
        let k4 = Graph::from_fn(4, |_, _| true);
        assert_eq!(k4.to_graph6(), "C~");
    }

    #[test]
    fn large_header() {
        let g = Graph::from_edges(100, &[(0, 99), (3, 4)]).unwrap();
        let text = g.to_graph6();
        assert!(text.starts_with('~'));
        assert_eq!(Graph::from_graph6(&text).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_graph6() {
        assert!(Graph::from_graph6("").is_err());
        assert!(Graph::from_graph6("C").is_err());
        assert!(Graph::from_graph6("C~~").is_err());
        assert!(Graph::from_graph6("C\x7f").is_err());
    }

    #[test]
    fn basic_queries() {
        let p = petersen();
        assert_eq!(p.regular_degree(), Some(3));
        assert_eq!(p.edge_count(), 15);
        assert!(p.is_connected());
        assert_eq!(p.complement().regular_degree(), Some(6));
        assert_eq!(p.common_neighbor_count(0, 1), 0);
        let mut g = Graph::new(3);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert_eq!(g.components().len(), 3);
        let line = "0 1\n";
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.to_edge_list(), line);
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..80, seed in prop::collection::vec(any::<bool>(), 3160)) {
            let g = Graph::from_fn(n, |u, v| seed[(v * (v - 1) / 2 + u) % seed.len()]);
            prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
        }
    }
}
