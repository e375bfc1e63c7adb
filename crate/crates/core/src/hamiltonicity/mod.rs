//! Exact Hamiltonicity deciders: plain cycles, cycles through a forced
//! linear forest, k-Hamiltonicity and k-edge-Hamiltonicity.
//!
//! Forced paths are contracted to units with two ends; both engines search
//! over units, so a forest costs nothing beyond the smaller instance.

mod forest;
mod held_karp;
mod search;
mod units;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_ORDER};

pub use forest::{enumerate_linear_forests, LinearForest, LinearForests};
pub use held_karp::DP_MAX_UNITS;

use units::Units;

/// Which cycle engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Backtracking under a node budget, then the DP when it fits.
    #[default]
    Auto,
    HeldKarp,
    Backtrack,
}

fn auto_budget(units: usize) -> u64 {
    match units {
        0..=16 => 4_000,
        17..=DP_MAX_UNITS => 400_000,
        _ => u64::MAX,
    }
}

fn solve_units(units: &mut Units, engine: Engine) -> Result<Option<Vec<usize>>> {
    if let Some(t) = units.trivial() {
        return Ok(t.map(|order| units.expand(&order)));
    }
    units.pick_root();
    let order = match engine {
        Engine::HeldKarp => {
            if units.len() > DP_MAX_UNITS {
                return Err(Error::Capacity {
                    what: "Held–Karp units",
                    limit: DP_MAX_UNITS as u64,
                    requested: units.len() as u64,
                });
            }
            held_karp::solve(units)
        }
        Engine::Backtrack => match search::solve(units, u64::MAX) {
            search::Outcome::Found(o) => Some(o),
            search::Outcome::Absent => None,
            search::Outcome::OutOfBudget => unreachable!("unbounded search"),
        },
        Engine::Auto => match search::solve(units, auto_budget(units.len())) {
            search::Outcome::Found(o) => Some(o),
            search::Outcome::Absent => None,
            search::Outcome::OutOfBudget => held_karp::solve(units),
        },
    };
    Ok(order.map(|o| units.expand(&o)))
}

/// A Hamilton cycle of `g` containing every edge of `forest`, as a vertex
/// sequence (the closing edge is implied), or `None`.
pub fn find_hamilton_cycle_through(
    g: &Graph,
    forest: &LinearForest,
    engine: Engine,
) -> Result<Option<Vec<usize>>> {
    let mut units = Units::new(g, forest)?;
    solve_units(&mut units, engine)
}

pub fn find_hamilton_cycle(g: &Graph, engine: Engine) -> Result<Option<Vec<usize>>> {
    find_hamilton_cycle_through(g, &LinearForest::empty(), engine)
}

pub fn has_hamilton_cycle(g: &Graph) -> bool {
    find_hamilton_cycle(g, Engine::Auto)
        .expect("the automatic engine has no capacity limit")
        .is_some()
}

pub fn has_hamilton_cycle_with(g: &Graph, engine: Engine) -> Result<bool> {
    Ok(find_hamilton_cycle(g, engine)?.is_some())
}

/// Whether some Hamilton cycle of `g` uses every edge of `forest`.
/// Invalid forests are a domain error.
pub fn has_hamilton_cycle_through(g: &Graph, forest: &LinearForest) -> Result<bool> {
    Ok(find_hamilton_cycle_through(g, forest, Engine::Auto)?.is_some())
}

/// Traceability, via a Hamilton cycle in `g` plus one universal vertex.
/// Order 64 leaves no room for the apex and is a capacity error.
pub fn has_hamilton_path(g: &Graph) -> Result<bool> {
    let n = g.order();
    if n <= 1 {
        return Ok(n == 1);
    }
    if n >= MAX_ORDER {
        return Err(Error::Capacity { what: "graph order for apex join", limit: MAX_ORDER as u64 - 1, requested: n as u64 });
    }
    let mut h = Graph::empty(n + 1)?;
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    for v in 0..n {
        h.add_edge(v, n);
    }
    Ok(has_hamilton_cycle(&h))
}

/// Relabelling that puts high-degree vertices first, so that the
/// lexicographic enumerations below reach dense, likely-failing
/// configurations early.
fn degree_rank(g: &Graph) -> Vec<usize> {
    let mut by_deg: Vec<usize> = (0..g.order()).collect();
    by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut rank = vec![0; g.order()];
    for (r, &v) in by_deg.iter().enumerate() {
        rank[v] = r;
    }
    rank
}

/// Every set of at most `k` deleted vertices leaves a Hamiltonian graph.
/// Requires `order − k ≥ 3`.
pub fn is_k_hamiltonian(g: &Graph, k: usize) -> Result<bool> {
    let n = g.order();
    if n < k + 3 {
        return Err(Error::domain(format!("k-Hamiltonicity needs order − k ≥ 3 (order {n}, k {k})")));
    }
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for size in 0..=k {
        for del in by_deg.iter().copied().combinations(size) {
            let s: VertexSet = del.into_iter().collect();
            if !has_hamilton_cycle(&g.induced_delete(s)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cycles found so far, stored as per-vertex successor bitsets.
struct CycleCache {
    cycles: Vec<Vec<u64>>,
}

impl CycleCache {
    const CAP: usize = 64;

    fn covers(&self, edges: &[(usize, usize)]) -> bool {
        self.cycles
            .iter()
            .rev()
            .any(|c| edges.iter().all(|&(u, v)| c[u] & (1 << v) != 0))
    }

    fn push(&mut self, n: usize, cycle: &[usize]) {
        let mut c = vec![0u64; n];
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            c[a] |= 1 << b;
            c[b] |= 1 << a;
        }
        if self.cycles.len() == Self::CAP {
            self.cycles.remove(0);
        }
        self.cycles.push(c);
    }
}

/// Every linear forest with at most `k` edges (the empty one included)
/// lies on a Hamilton cycle.
pub fn is_k_edge_hamiltonian(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    let h = g.relabel(&degree_rank(g));
    let mut cache = CycleCache { cycles: Vec::new() };
    match find_hamilton_cycle(&h, Engine::Auto).expect("auto engine") {
        Some(c) => cache.push(n, &c),
        None => return false,
    }
    for f in enumerate_linear_forests(&h, k) {
        let edges = f.edges();
        if cache.covers(&edges) {
            continue;
        }
        match find_hamilton_cycle_through(&h, &f, Engine::Auto).expect("enumerated forests are valid") {
            Some(c) => cache.push(n, &c),
            None => return false,
        }
    }
    true
}

/// Whether `cycle` is a Hamilton cycle of `g` (used by tests and reports).
pub fn is_hamilton_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.order();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = 0u64;
    for &v in cycle {
        if v >= n || seen & (1 << v) != 0 {
            return false;
        }
        seen |= 1 << v;
    }
    (0..n).all(|i| g.is_adjacent(cycle[i], cycle[(i + 1) % n]))
}

#[cfg(test)]
mod tests;
