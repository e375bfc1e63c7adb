//! Simple undirected graphs on at most 64 vertices with bitset adjacency.

mod clique;
mod dense;
pub mod graph6;
mod iso;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use clique::{clique_number, maximum_clique};
pub use dense::{DenseGraph, DENSE_MAX_ORDER};
pub use iso::{is_isomorphic, ISO_MAX_ORDER};

/// Vertex cap of the bitset representation.
pub const MAX_ORDER: usize = 64;

/// A set of vertex indices below 64, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
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

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Read access to a simple graph's adjacency; implemented by [`Graph`] and
/// the wide [`DenseGraph`] used for family constructions above the bitset cap.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn is_adjacent(&self, u: usize, v: usize) -> bool;
    fn degree(&self, v: usize) -> usize;

    fn neighbor_list(&self, v: usize) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.is_adjacent(v, w)).collect()
    }

    fn size(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

/// A simple undirected graph on at most [`MAX_ORDER`] vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
}

/// Summary invariants of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub order: usize,
    pub size: usize,
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    pub connected: bool,
}

fn check_cap(requested: usize) -> Result<()> {
    if requested > MAX_ORDER {
        Err(Error::Capacity {
            what: "graph order",
            limit: MAX_ORDER as u64,
            requested: requested as u64,
        })
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_cap(n)?;
        Ok(Graph { order: n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::domain(format!("invalid edge ({u},{v}) for order {n}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Inserts `{u,v}`. Panics on a loop or an out-of-range index.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order, "bad edge ({u},{v})");
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.order && v < self.order);
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.add_edge(u, v);
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order {
            for v in VertexSet(self.adj[u] & !(2u64 << u).wrapping_sub(1)).iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// Missing pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                if !self.is_adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.order).0;
        let adj = (0..self.order)
            .map(|v| all & !self.adj[v] & !(1u64 << v))
            .collect();
        Graph { order: self.order, adj }
    }

    pub fn is_complete(&self) -> bool {
        self.size() * 2 == self.order * self.order.saturating_sub(1)
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        self.reach_within(v, self.vertices())
    }

    /// Vertices reachable from `start` through `allowed` (which should contain `start`).
    pub fn reach_within(&self, start: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            let fresh = VertexSet(next & allowed.0 & !seen.0);
            seen = seen.union(fresh);
            frontier = fresh;
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// Connected; the empty and single-vertex graphs count as connected.
    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.component_of(0).len() == self.order
    }

    pub fn stats(&self) -> GraphStats {
        let degrees = self.degrees();
        GraphStats {
            order: self.order,
            size: degrees.iter().sum::<usize>() / 2,
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            connected: self.is_connected(),
            degrees,
        }
    }

    /// Subgraph induced by `keep`, relabelled in increasing index order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let verts = keep.intersection(self.vertices()).to_vec();
        let mut g = Graph { order: verts.len(), adj: vec![0; verts.len()] };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.is_adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Deletes the vertices of `s`; survivors keep their relative order.
    pub fn induced_delete(&self, s: VertexSet) -> Graph {
        self.induced(self.vertices().difference(s))
    }

    /// The graph whose vertex `perm[v]` plays the role of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut g = Graph { order: self.order, adj: vec![0; self.order] };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.order == other.order && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & s.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.order
    }
    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        Graph::is_adjacent(self, u, v)
    }
    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }
    fn neighbor_list(&self, v: usize) -> Vec<usize> {
        self.neighbors(v).to_vec()
    }
    fn size(&self) -> usize {
        Graph::size(self)
    }
}

/// Serialized as its graph6 string.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&graph6::encode(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        graph6::decode(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order, self.edges())
    }
}

/// `K_m`.
pub fn complete_graph(m: usize) -> Result<Graph> {
    check_cap(m)?;
    let all = VertexSet::full(m).0;
    let adj = (0..m).map(|v| all & !(1u64 << v)).collect();
    Ok(Graph { order: m, adj })
}

/// `I_m`, the edgeless graph.
pub fn independent_graph(m: usize) -> Result<Graph> {
    Graph::empty(m)
}

/// `C_m` on vertices `0..m` in cyclic order.
pub fn cycle_graph(m: usize) -> Result<Graph> {
    let mut g = Graph::empty(m)?;
    if m >= 3 {
        for v in 0..m {
            g.add_edge(v, (v + 1) % m);
        }
    }
    Ok(g)
}

/// `P_m` on vertices `0..m` in path order.
pub fn path_graph(m: usize) -> Result<Graph> {
    let mut g = Graph::empty(m)?;
    for v in 1..m {
        g.add_edge(v - 1, v);
    }
    Ok(g)
}

/// Complete bipartite `K_{a,b}`; the `a` side comes first.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    join(&independent_graph(a)?, &independent_graph(b)?)
}

/// The Petersen graph (outer 5-cycle `0..5`, inner pentagram `5..10`).
pub fn petersen_graph() -> Graph {
    let mut g = Graph::empty(10).expect("within cap");
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// Disjoint union; the vertices of `h` follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    check_cap(g.order + h.order)?;
    let shift = g.order;
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|&r| r << shift));
    Ok(Graph { order: g.order + h.order, adj })
}

/// Join `g ∨ h`: disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let mut out = disjoint_union(g, h)?;
    let left = VertexSet::full(g.order).0;
    let right = VertexSet::full(g.order + h.order).0 & !left;
    for v in 0..g.order {
        out.adj[v] |= right;
    }
    for v in g.order..out.order {
        out.adj[v] |= left;
    }
    Ok(out)
}
