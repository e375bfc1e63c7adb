use crate::error::{Error, Result};

use super::{Adjacency, Graph};

/// Order cap of [`DenseGraph`].
pub const DENSE_MAX_ORDER: usize = 128;

/// Wide simple graph (up to 128 vertices) used to feed family constructions
/// beyond the 64-vertex bitset cap straight into the spectral solvers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DenseGraph {
    order: usize,
    rows: Vec<u128>,
}

impl DenseGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > DENSE_MAX_ORDER {
            return Err(Error::Capacity {
                what: "dense graph order",
                limit: DENSE_MAX_ORDER as u64,
                requested: n as u64,
            });
        }
        Ok(DenseGraph { order: n, rows: vec![0; n] })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order && v < self.order, "bad edge ({u},{v})");
        self.rows[u] |= 1u128 << v;
        self.rows[v] |= 1u128 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1u128 << v);
        self.rows[v] &= !(1u128 << u);
    }

    /// Adds every edge inside `block`.
    pub fn add_clique(&mut self, block: impl Iterator<Item = usize> + Clone) {
        for u in block.clone() {
            for v in block.clone() {
                if u < v {
                    self.add_edge(u, v);
                }
            }
        }
    }

    /// Narrows to a bitset [`Graph`] when the order allows it.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(self.order)?;
        for u in 0..self.order {
            for v in u + 1..self.order {
                if self.is_adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }
}

impl From<&Graph> for DenseGraph {
    fn from(g: &Graph) -> Self {
        let rows = (0..g.order()).map(|v| g.neighbors(v).0 as u128).collect();
        DenseGraph { order: g.order(), rows }
    }
}

impl Adjacency for DenseGraph {
    fn order(&self) -> usize {
        self.order
    }
    fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }
    fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }
}
