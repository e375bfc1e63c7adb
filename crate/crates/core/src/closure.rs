//! Bondy–Chvátal closure and the clique/frontier diagnostics of the
//! stability argument.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{recognize, FamilyKind, FamilyParams};
use crate::graph::{maximum_clique, Graph, VertexSet};
use crate::hamiltonicity::{is_k_edge_hamiltonian, is_k_hamiltonian};

/// `cl_s(g)`: joins non-adjacent pairs with degree sum at least `s` until
/// none remain.
pub fn closure(g: &Graph, s: usize) -> Graph {
    let n = g.order();
    let mut cl = g.clone();
    let mut work: Vec<(usize, usize)> = cl
        .non_edges()
        .into_iter()
        .filter(|&(u, v)| cl.degree(u) + cl.degree(v) >= s)
        .collect();
    while let Some((u, v)) = work.pop() {
        if cl.is_adjacent(u, v) {
            continue;
        }
        cl.add_edge(u, v);
        // degrees only grow, so only pairs at u or v can newly qualify
        for a in [u, v] {
            let da = cl.degree(a);
            for w in (0..n).filter(|&w| w != a && !cl.is_adjacent(a, w)) {
                if da + cl.degree(w) >= s {
                    work.push((a, w));
                }
            }
        }
    }
    cl
}

/// Both properties evaluated on `g` and on `cl_{n+k}(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosureEquivalence {
    pub k_ham: bool,
    pub closure_k_ham: bool,
    pub k_edge_ham: bool,
    pub closure_k_edge_ham: bool,
}

impl ClosureEquivalence {
    pub fn k_ham_agree(&self) -> bool {
        self.k_ham == self.closure_k_ham
    }

    pub fn k_edge_ham_agree(&self) -> bool {
        self.k_edge_ham == self.closure_k_edge_ham
    }
}

pub fn closure_equiv_check(g: &Graph, k: usize) -> Result<ClosureEquivalence> {
    let cl = closure(g, g.order() + k);
    Ok(ClosureEquivalence {
        k_ham: is_k_hamiltonian(g, k)?,
        closure_k_ham: is_k_hamiltonian(&cl, k)?,
        k_edge_ham: is_k_edge_hamiltonian(g, k),
        closure_k_edge_ham: is_k_edge_hamiltonian(&cl, k),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Complete,
    #[serde(rename = "H-shape")]
    HShape,
    #[serde(rename = "L-shape")]
    LShape,
    Intermediate,
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosureDiagnostic {
    pub closed_graph: Graph,
    pub clique_number: usize,
    /// Lexicographically least maximum clique of the closure.
    pub clique: VertexSet,
    /// Vertices with `2·deg ≥ n + k` in the closure.
    pub heavy_set: VertexSet,
    /// Clique vertices with a neighbour outside the clique.
    pub frontier: VertexSet,
    pub frontier_count: usize,
    pub classification: Classification,
    /// The closure is exactly `H_{n,k,δ}` or `L_{n,k,δ}` (up to isomorphism).
    pub closure_is_family: Option<FamilyKind>,
}

/// Closure diagnostics for a graph with minimum degree at least `delta`.
///
/// With `ω = n − δ + k` the shape follows the frontier size: `s = δ` gives
/// the H-shape, `s = k + 1` the L-shape (the two coincide when `δ = k + 1`).
pub fn classify_closure(g: &Graph, k: usize, delta: usize) -> Result<ClosureDiagnostic> {
    let n = g.order();
    if g.min_degree() < delta {
        return Err(Error::parameter(format!(
            "minimum degree {} is below delta = {delta}",
            g.min_degree()
        )));
    }
    let cl = closure(g, n + k);
    let heavy_set: VertexSet = (0..n).filter(|&v| 2 * cl.degree(v) >= n + k).collect();
    let clique = maximum_clique(&cl);
    let omega = clique.len();
    let mut frontier = VertexSet::EMPTY;
    for v in clique.iter() {
        if !cl.neighbors(v).difference(clique).is_empty() {
            frontier.insert(v);
        }
    }
    let s = frontier.len();
    let target = (n + k).checked_sub(delta);
    let classification = if cl.is_complete() {
        Classification::Complete
    } else if target.is_none_or(|t| omega < t) {
        Classification::BelowThreshold
    } else if Some(omega) == target && s == delta {
        Classification::HShape
    } else if Some(omega) == target && s == k + 1 {
        Classification::LShape
    } else {
        Classification::Intermediate
    };
    let closure_is_family = FamilyParams::new(n, k, delta).ok().and_then(|p| {
        FamilyKind::BOTH.into_iter().find(|&kind| recognize(&cl, &p, kind))
    });
    Ok(ClosureDiagnostic {
        closed_graph: cl,
        clique_number: omega,
        clique,
        heavy_set,
        frontier,
        frontier_count: s,
        classification,
        closure_is_family,
    })
}
