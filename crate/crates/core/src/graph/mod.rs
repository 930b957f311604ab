//! Simple undirected graphs on `0..n` with bit-row adjacency.
//!
//! Set-valued algorithms (independent sets, cliques, colorings) work on
//! [`VertexSet`], a 64-bit mask, and therefore require `n <= 64`. Graph
//! constructions such as powers and line graphs have no such limit.

mod dimacs;
pub mod enumerate;
mod generators;
mod independent;
mod ops;
mod structure;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use dimacs::{parse_dimacs, to_dimacs};
pub use generators::{generate, Family};
pub use independent::{
    alpha, clique_number, max_weight_clique, max_weight_independent_set,
    maximal_cliques, maximal_independent_sets, maximal_independent_sets_in,
    maximum_cliques,
};
pub use ops::{
    complement, conormal_power, disjoint_union, induced_subgraph, line_graph, normal_power,
    or_product, substitute, union_graphs, LineGraph,
};
pub use structure::{
    bipartition, boundary, bridges, components, has_perfect_matching_bipartite, induced_edges,
    is_k_regular, maximum_matching_bipartite, BipartiteMatching, BipartitionWitness,
};

/// Largest vertex count supported by [`VertexSet`].
pub const SET_LIMIT: usize = 64;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph must have at least one vertex".into()));
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| {
            BitIter(bits).map(move |b| w * 64 + b)
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Neighborhood of `v` as a mask. Requires `n <= 64`.
    #[inline]
    pub fn nbr(&self, v: usize) -> u64 {
        debug_assert!(self.n <= SET_LIMIT);
        self.rows[v * self.words]
    }

    /// Mask of all vertices. Requires `n <= 64`.
    #[inline]
    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub(crate) fn require_set_limit(&self, what: &'static str) -> Result<()> {
        if self.n > SET_LIMIT {
            Err(Error::CapExceeded {
                what,
                limit: SET_LIMIT,
                actual: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.nbr(v) & s.0 == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (self.nbr(v) | (1 << v)) & s.0 == s.0)
    }

    /// Checks the structural invariants; every constructor upholds them.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u)
                && self.neighbors(u).all(|v| v < self.n && self.has_edge(v, u))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// A set of vertices of a graph with at most 64 vertices.
///
/// Ordering is by mask value, which is the canonical order used for every
/// list of sets the library returns.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= SET_LIMIT);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1 << v)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sum of `weights[v]` over members.
    pub fn mass(self, weights: &[f64]) -> f64 {
        self.iter().map(|v| weights[v]).sum()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = items.iter().find(|&&v| v >= SET_LIMIT) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(items.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [0, 3, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,3,5]");
        assert_eq!(VertexSet::full(64).len(), 64);
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::empty(0).is_err());
    }

    #[test]
    fn wide_graph_rows() {
        let g = Graph::from_edges(130, [(0, 129), (64, 65)]).unwrap();
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edge_count(), 2);
        assert!(g.check_invariants());
    }
}
