//! Undirected simple graphs stored as bit-vector adjacency rows.

use std::fmt;

use crate::bits::{self, bit, count, members, Bits, MAX_ORDER};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` exceeds [`MAX_ORDER`]; use [`Graph::try_empty`] for
    /// untrusted orders.
    pub fn empty(n: usize) -> Self {
        Self::try_empty(n).expect("graph order within build cap")
    }

    pub fn try_empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph from raw rows, checking symmetry, loops and stray bits.
    pub fn from_rows(rows: Vec<Bits>) -> Result<Self> {
        let g = Graph {
            n: rows.len(),
            adj: rows,
        };
        if g.n > MAX_ORDER {
            return Err(Error::OrderTooLarge(g.n));
        }
        if !g.is_valid() {
            return Err(Error::MalformedInput("adjacency rows are not a simple graph".into()));
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = bits::prefix(n) & !bit(v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// The Clebsch graph: vertices are 4-bit words, adjacent when they differ
    /// in exactly one bit or in all four.
    pub fn clebsch() -> Self {
        let mut g = Graph::empty(16);
        for u in 0..16usize {
            for v in (u + 1)..16 {
                let d = (u ^ v).count_ones();
                if d == 1 || d == 4 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> Bits {
        bits::prefix(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[Bits] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        count(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge {u}-{v}");
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Appends a vertex adjacent to `nbrs` and returns its index.
    pub fn push_vertex(&mut self, nbrs: Bits) -> usize {
        assert!(self.n < MAX_ORDER, "graph order at build cap");
        assert_eq!(nbrs & !self.vertices(), 0, "neighbor outside graph");
        let v = self.n;
        self.n += 1;
        self.adj.push(nbrs);
        for u in members(nbrs) {
            self.adj[u] |= bit(v);
        }
        v
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&r| count(r)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| members(self.adj[u] & !bits::prefix(u + 1)).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Number of edges with both ends in `set`.
    #[inline]
    pub fn edges_within(&self, set: Bits) -> usize {
        members(set).map(|v| count(self.adj[v] & set)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: Bits) -> bool {
        members(set).all(|v| self.adj[v] & set == 0)
    }

    /// Checks symmetry, irreflexivity and that no row has bits past the order.
    pub fn is_valid(&self) -> bool {
        let all = self.vertices();
        (0..self.n).all(|v| {
            let row = self.adj[v];
            row & !all == 0 && row & bit(v) == 0 && members(row).all(|u| self.adj[u] & bit(v) != 0)
        })
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect(),
        }
    }

    /// Subgraph induced by `set`, keeping the relative order of its members.
    pub fn induced(&self, set: Bits) -> Graph {
        let keep: Vec<usize> = members(set & self.vertices()).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| members(self.adj[v] & set).fold(0, |acc, u| acc | bit(pos[u])))
            .collect();
        Graph { n: keep.len(), adj }
    }

    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertices() & !bit(v))
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0; self.n];
        for v in 0..self.n {
            adj[perm[v]] = members(self.adj[v]).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Graph { n: self.n, adj }
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        let off = self.n;
        for _ in 0..other.n {
            g.push_vertex(0);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }

    /// Induced subgraph on the vertices neither equal nor adjacent to `v`.
    pub fn residual(&self, v: usize) -> Graph {
        self.induced(self.vertices() & !self.adj[v] & !bit(v))
    }

    /// Sum of the degrees of the neighbors of `v`.
    pub fn z_value(&self, v: usize) -> usize {
        members(self.adj[v]).map(|u| self.degree(u)).sum()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    /// Non-adjacent pairs that have no common neighbor.
    pub fn free_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let cand = self.vertices() & !self.adj[u] & !bits::prefix(u + 1);
            members(cand)
                .filter(move |&v| self.adj[u] & self.adj[v] == 0)
                .map(move |v| (u, v))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{})", edges.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_free_basics() {
        assert!(!Graph::complete(3).is_triangle_free());
        assert!(Graph::cycle(5).is_triangle_free());
        assert!(Graph::cycle(4).is_triangle_free());
        assert!(Graph::clebsch().is_triangle_free());
    }

    #[test]
    fn petersen_by_triples() {
        let g = Graph::petersen();
        assert_eq!(g.edge_count(), 15);
        let mut tri = false;
        for a in 0..10 {
            for b in a + 1..10 {
                for c in b + 1..10 {
                    tri |= g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
                }
            }
        }
        assert!(!tri);
        assert!(g.is_triangle_free());
    }

    #[test]
    fn residual_examples() {
        let c5 = Graph::cycle(5);
        for v in 0..5 {
            let r = c5.residual(v);
            assert_eq!(r, Graph::complete(2));
        }
        let star = Graph::star(4);
        assert_eq!(star.residual(0).order(), 0);
        assert_eq!(star.residual(1), Graph::empty(3));
    }

    #[test]
    fn residual_keeps_order() {
        // 0-1, 2-4, 3-5; residual of 0 drops 0 and 1.
        let g = Graph::from_edges(6, &[(0, 1), (2, 4), (3, 5)]);
        let r = g.residual(0);
        assert_eq!(r, Graph::from_edges(4, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn z_values() {
        let c5 = Graph::cycle(5);
        assert!((0..5).all(|v| c5.z_value(v) == 4));
        let star = Graph::star(4);
        assert_eq!(star.z_value(0), 4);
        assert_eq!(star.z_value(3), 4);
        let cl = Graph::clebsch();
        assert!((0..16).all(|v| cl.z_value(v) == 25));
    }

    #[test]
    fn clebsch_shape() {
        let g = Graph::clebsch();
        assert_eq!(g.edge_count(), 40);
        assert!((0..16).all(|v| g.degree(v) == 5));
    }

    #[test]
    fn from_rows_rejects_asymmetric() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b110, 0b001, 0b001]).is_ok());
    }

    #[test]
    fn free_pairs_of_mtf() {
        assert_eq!(Graph::cycle(5).free_pairs().count(), 0);
        assert_eq!(Graph::from_edges(4, &[(0, 1), (2, 3)]).free_pairs().count(), 4);
    }
}
