use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex-disjoint paths, each with at least one edge.
///
/// Normal form: every path runs from its smaller endpoint, and paths are
/// sorted by that endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForest {
    paths: Vec<Vec<usize>>,
}

impl LinearForest {
    pub fn empty() -> Self {
        LinearForest { paths: Vec::new() }
    }

    /// Builds and normalizes a forest from its paths. Checks disjointness
    /// and path lengths, not membership in any host graph.
    pub fn from_paths(paths: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(paths.len());
        for mut p in paths {
            if p.len() < 2 {
                return Err(Error::domain("forest paths need at least one edge"));
            }
            if p.iter().any(|&v| !seen.insert(v)) {
                return Err(Error::domain("forest paths must be vertex-disjoint and simple"));
            }
            if p[0] > p[p.len() - 1] {
                p.reverse();
            }
            out.push(p);
        }
        out.sort_unstable_by_key(|p| p[0]);
        Ok(LinearForest { paths: out })
    }

    /// Assembles the forest spanned by an edge set.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        let mut nbrs: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::domain(format!("loop at {u}")));
            }
            nbrs.entry(u).or_default().push(v);
            nbrs.entry(v).or_default().push(u);
        }
        if nbrs.values().any(|ns| ns.len() > 2) {
            return Err(Error::domain("a vertex has forest degree above 2"));
        }
        let mut used = std::collections::HashSet::new();
        let mut paths = Vec::new();
        for (&v, ns) in &nbrs {
            if ns.len() != 1 || used.contains(&v) {
                continue;
            }
            let mut path = vec![v];
            used.insert(v);
            let mut prev = v;
            let mut cur = ns[0];
            loop {
                path.push(cur);
                used.insert(cur);
                match nbrs[&cur].iter().find(|&&w| w != prev) {
                    Some(&w) => {
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
            paths.push(path);
        }
        if used.len() != nbrs.len() {
            return Err(Error::domain("edge set contains a cycle"));
        }
        let total: usize = paths.iter().map(|p| p.len() - 1).sum();
        if total != edges.len() {
            return Err(Error::domain("repeated edge in forest"));
        }
        Self::from_paths(paths)
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.paths.iter().map(|p| p.len() - 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Every vertex exists in `g` and every path edge is an edge of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for p in &self.paths {
            if let Some(&v) = p.iter().find(|&&v| v >= g.order()) {
                return Err(Error::domain(format!("forest vertex {v} outside order {}", g.order())));
            }
            if let Some(w) = p.windows(2).find(|w| !g.is_adjacent(w[0], w[1])) {
                return Err(Error::domain(format!("forest edge ({},{}) not in graph", w[0], w[1])));
            }
        }
        Ok(())
    }
}

/// Every linear forest of `g` with between 1 and `k` edges, each once.
///
/// Forests are produced as edge subsets in lexicographic order of edge
/// indices (edges ordered as by [`Graph::edges`]).
pub fn enumerate_linear_forests(g: &Graph, k: usize) -> LinearForests {
    LinearForests {
        edges: g.edges(),
        k,
        stack: Vec::new(),
        started: false,
    }
}

/// Lazy iterator returned by [`enumerate_linear_forests`].
pub struct LinearForests {
    edges: Vec<(usize, usize)>,
    k: usize,
    stack: Vec<usize>,
    started: bool,
}

impl LinearForests {
    /// Can edge `j` join the chosen edges without a degree-3 vertex or a cycle?
    fn fits(&self, j: usize) -> bool {
        let (u, v) = self.edges[j];
        let deg = |x: usize| {
            self.stack
                .iter()
                .filter(|&&i| self.edges[i].0 == x || self.edges[i].1 == x)
                .count()
        };
        if deg(u) >= 2 || deg(v) >= 2 {
            return false;
        }
        // walk the path through u; reaching v would close a cycle
        let mut prev = usize::MAX;
        let mut cur = u;
        loop {
            let next = self.stack.iter().find_map(|&i| {
                let (a, b) = self.edges[i];
                if a == cur && b != prev {
                    Some(b)
                } else if b == cur && a != prev {
                    Some(a)
                } else {
                    None
                }
            });
            match next {
                Some(w) if w == v => return false,
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => return true,
            }
        }
    }

    fn first_fit(&self, from: usize) -> Option<usize> {
        (from..self.edges.len()).find(|&j| self.fits(j))
    }

    /// The chosen edges as a forest in normal form: each path is walked from
    /// its smaller endpoint, and paths come out in increasing endpoint order.
    fn current(&self) -> LinearForest {
        let m = self.stack.len();
        let edge = |i: usize| self.edges[self.stack[i]];
        let touches = |x: usize| (0..m).filter(|&i| edge(i).0 == x || edge(i).1 == x).count();
        let mut used = 0u64;
        let mut paths = Vec::new();
        while (used.count_ones() as usize) < m {
            let start = (0..m)
                .filter(|&i| used >> i & 1 == 0)
                .flat_map(|i| [edge(i).0, edge(i).1])
                .filter(|&x| touches(x) == 1)
                .min()
                .expect("every path has an endpoint");
            let mut path = vec![start];
            let mut cur = start;
            while let Some(i) = (0..m).find(|&i| used >> i & 1 == 0 && (edge(i).0 == cur || edge(i).1 == cur)) {
                used |= 1 << i;
                cur = if edge(i).0 == cur { edge(i).1 } else { edge(i).0 };
                path.push(cur);
            }
            paths.push(path);
        }
        LinearForest { paths }
    }
}

impl Iterator for LinearForests {
    type Item = LinearForest;

    fn next(&mut self) -> Option<LinearForest> {
        if self.k == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            let j = self.first_fit(0)?;
            self.stack.push(j);
            return Some(self.current());
        }
        // extend the current set if possible
        if self.stack.len() < self.k {
            let last = *self.stack.last()?;
            if let Some(j) = self.first_fit(last + 1) {
                self.stack.push(j);
                return Some(self.current());
            }
        }
        // otherwise advance the deepest position that can move
        while let Some(i) = self.stack.pop() {
            if let Some(j) = self.first_fit(i + 1) {
                self.stack.push(j);
                return Some(self.current());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    #[test]
    fn normal_form() {
        let f = LinearForest::from_paths(vec![vec![5, 4, 3], vec![2, 0]]).unwrap();
        assert_eq!(f.paths(), &[vec![0, 2], vec![3, 4, 5]]);
        assert_eq!(f.edge_count(), 3);
        assert!(LinearForest::from_paths(vec![vec![1]]).is_err());
        assert!(LinearForest::from_paths(vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(LinearForest::from_edges(&[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(LinearForest::from_edges(&[(0, 1), (0, 2), (0, 3)]).is_err());
        let g = LinearForest::from_edges(&[(3, 4), (0, 2), (3, 5)]).unwrap();
        assert_eq!(g.paths(), &[vec![0, 2], vec![4, 3, 5]]);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_linear_forests(&cycle_graph(5).unwrap(), 1).count(), 5);
        assert_eq!(enumerate_linear_forests(&complete_graph(4).unwrap(), 2).count(), 21);
        assert_eq!(enumerate_linear_forests(&complete_graph(4).unwrap(), 0).count(), 0);
        // C_5 with up to 5 edges: every proper edge subset
        assert_eq!(enumerate_linear_forests(&cycle_graph(5).unwrap(), 5).count(), 30);
    }
}
