use super::{Graph, VertexSet};

/// Size of a largest clique within `cand` (branch and bound with pivoting).
fn max_clique_size_within(g: &Graph, cand: VertexSet) -> usize {
    fn expand(g: &Graph, size: usize, cand: VertexSet, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + cand.len() <= *best {
            return;
        }
        let pivot = cand
            .iter()
            .max_by_key(|&u| g.neighbors(u).intersection(cand).len())
            .expect("non-empty");
        let mut rest = cand;
        for v in cand.difference(g.neighbors(pivot)).iter() {
            if size + rest.len() <= *best {
                return;
            }
            expand(g, size + 1, rest.intersection(g.neighbors(v)), best);
            rest.remove(v);
        }
    }
    let mut best = 0;
    expand(g, 0, cand, &mut best);
    best
}

/// Clique number ω(g); 0 for the empty graph.
pub fn clique_number(g: &Graph) -> usize {
    max_clique_size_within(g, g.vertices())
}

/// The lexicographically least maximum clique (as a sorted vertex list).
pub fn maximum_clique(g: &Graph) -> VertexSet {
    let target = clique_number(g);
    let mut chosen = VertexSet::EMPTY;
    let mut cand = g.vertices();
    while chosen.len() < target {
        let v = cand.first().expect("a maximum clique extends the prefix");
        let with_v = cand.intersection(g.neighbors(v));
        if chosen.len() + 1 + max_clique_size_within(g, with_v) == target {
            chosen.insert(v);
            cand = with_v;
        } else {
            cand.remove(v);
        }
    }
    chosen
}
