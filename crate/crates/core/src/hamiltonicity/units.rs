use crate::error::Result;
use crate::graph::Graph;

use super::LinearForest;

/// The vertex set split into forced paths and free vertices. A Hamilton
/// cycle through the forest is a cyclic order of units in which each exit
/// end is adjacent to the next unit's entry end.
pub(crate) struct Units {
    pub adj: Vec<u64>,
    pub paths: Vec<Vec<usize>>,
}

impl Units {
    pub fn new(g: &Graph, forest: &LinearForest) -> Result<Self> {
        forest.validate(g)?;
        let n = g.order();
        let mut covered = 0u64;
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for p in forest.paths() {
            for &v in p {
                covered |= 1 << v;
            }
            paths.push(p.clone());
        }
        for v in 0..n {
            if covered & (1 << v) == 0 {
                paths.push(vec![v]);
            }
        }
        let adj = (0..n).map(|v| g.neighbors(v).0).collect();
        Ok(Units { adj, paths })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn head(&self, u: usize) -> usize {
        self.paths[u][0]
    }

    pub fn tail(&self, u: usize) -> usize {
        *self.paths[u].last().expect("non-empty unit")
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] & (1 << b) != 0
    }

    /// Moves the most constrained unit to the front: a forced path if there
    /// is one, else a free vertex of least degree.
    pub fn pick_root(&mut self) {
        let root = (0..self.len())
            .min_by_key(|&u| {
                let p = &self.paths[u];
                (p.len() == 1, self.adj[p[0]].count_ones())
            })
            .expect("at least one unit");
        self.paths.swap(0, root);
    }

    /// Expands a unit order (after unit 0, with reversal flags) to a vertex cycle.
    pub fn expand(&self, order: &[(usize, bool)]) -> Vec<usize> {
        let mut cycle = self.paths[0].clone();
        for &(u, rev) in order {
            if rev {
                cycle.extend(self.paths[u].iter().rev());
            } else {
                cycle.extend(self.paths[u].iter());
            }
        }
        cycle
    }

    /// Special cases decided without search: fewer than three vertices, or a
    /// single unit.
    pub fn trivial(&self) -> Option<Option<Vec<(usize, bool)>>> {
        if self.order() < 3 {
            return Some(None);
        }
        if self.len() == 1 {
            return Some(if self.adjacent(self.head(0), self.tail(0)) { Some(Vec::new()) } else { None });
        }
        None
    }
}
