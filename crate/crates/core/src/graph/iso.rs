use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::Graph;

/// Order limit of [`is_isomorphic`].
pub const ISO_MAX_ORDER: usize = 16;

/// Stable colouring of both graphs at once (iterated degree refinement), so
/// colour ids are comparable across `g` and `h`.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = g.degrees();
    let mut ch: Vec<usize> = h.degrees();
    let mut classes = usize::MAX;
    loop {
        let sig = |gr: &Graph, col: &[usize], v: usize| {
            let mut ns: Vec<usize> = gr.neighbors(v).iter().map(|w| col[w]).collect();
            ns.sort_unstable();
            (col[v], ns)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let mut ids = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        cg = sg.iter().map(|s| ids[s]).collect();
        ch = sh.iter().map(|s| ids[s]).collect();
        if ids.len() == classes {
            return (cg, ch);
        }
        classes = ids.len();
    }
}

/// Exact isomorphism test by colour-refined backtracking, orders ≤ 16.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    let n = g.order().max(h.order());
    if n > ISO_MAX_ORDER {
        return Err(Error::Capacity {
            what: "isomorphism order",
            limit: ISO_MAX_ORDER as u64,
            requested: n as u64,
        });
    }
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(false);
    }

    // smallest colour classes first keeps the branching low
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (class_size[&cg[v]], cg[v], v));

    #[allow(clippy::too_many_arguments)]
    fn extend(
        depth: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        cg: &[usize],
        ch: &[usize],
        map: &mut [usize],
        used: &mut u64,
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for t in 0..h.order() {
            if *used >> t & 1 == 1 || ch[t] != cg[v] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g.is_adjacent(u, v) == h.is_adjacent(map[u], t));
            if !consistent {
                continue;
            }
            map[v] = t;
            *used |= 1 << t;
            if extend(depth + 1, order, g, h, cg, ch, map, used) {
                return true;
            }
            *used &= !(1 << t);
        }
        false
    }

    let mut map = vec![usize::MAX; g.order()];
    let mut used = 0u64;
    Ok(extend(0, &order, g, h, &cg, &ch, &mut map, &mut used))
}
