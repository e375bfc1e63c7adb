use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::q_radius;

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    let n = g.order();
    if u >= n || v >= n {
        return Err(Error::domain(format!("vertex out of range for order {n}")));
    }
    if u == v {
        return Err(Error::domain("u and v must be distinct"));
    }
    Ok(())
}

/// Kelmans operation: every neighbour of `v` outside `N(u) ∪ {u}` is
/// moved to `u`.
pub fn kelmans(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    check_pair(g, u, v)?;
    let private = g
        .neighbors(v)
        .difference(g.neighbors(u))
        .difference(VertexSet::singleton(u));
    let mut out = g.clone();
    for x in private {
        out.remove_edge(v, x);
        out.add_edge(u, x);
    }
    Ok(out)
}

/// Moves the edges `{v, w}` for `w ∈ ws` to `{u, w}`, after confirming
/// `f_u ≥ f_v` for the Perron vector `f` of `Q(g)`.
pub fn hong_zhang_rotate(g: &Graph, u: usize, v: usize, ws: VertexSet) -> Result<Graph> {
    check_pair(g, u, v)?;
    if ws.is_empty() {
        return Err(Error::domain("rotation set is empty"));
    }
    let allowed = g
        .neighbors(v)
        .difference(g.neighbors(u))
        .difference(VertexSet::singleton(u));
    if !ws.is_subset(allowed) {
        return Err(Error::domain("rotation set must lie in N(v) \\ (N(u) ∪ {u})"));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("rotation needs a connected graph".into()));
    }
    let f = q_radius(g)?.vector;
    if f[u] < f[v] {
        return Err(Error::Precondition(format!(
            "Perron entries f_u = {} < f_v = {}",
            f[u], f[v]
        )));
    }
    let mut out = g.clone();
    for w in ws {
        out.remove_edge(v, w);
        out.add_edge(u, w);
    }
    Ok(out)
}
