//! Exception-set membership: containment in a family graph and the
//! first-tier deletion shapes.
//!
//! Every class of `H_{n,k,δ}` and `L_{n,k,δ}` is a twin class, so an
//! embedding is just a choice of the X block. For `H` this is an independent
//! set of `δ−k` vertices whose neighbours fit in `δ` vertices; for `L` any set
//! of `δ−k` vertices with at most `k+1` neighbours outside it.

use crate::families::{deletion_budget, FamilyKind, FamilyParams};
use crate::graph::{Graph, VertexSet};

/// What the chosen X block has to satisfy.
#[derive(Clone, Copy)]
enum Shape {
    /// `G ⊆ family`.
    Subgraph,
    /// Every X vertex adjacent to exactly the same `|Y|` vertices (first tier).
    Rigid,
}

struct BlockSearch<'a> {
    g: &'a Graph,
    kind: FamilyKind,
    shape: Shape,
    size: usize,
    /// Allowed size of `N(X) \ X`.
    outside: usize,
    cands: Vec<usize>,
}

impl BlockSearch<'_> {
    fn accept(&self, chosen: VertexSet, nb: VertexSet) -> bool {
        match self.shape {
            Shape::Subgraph => nb.len() <= self.outside,
            Shape::Rigid => {
                nb.len() == self.outside
                    && chosen.iter().all(|x| {
                        let own = self.g.neighbors(x);
                        own.difference(chosen) == nb
                            && match self.kind {
                                FamilyKind::H => own.intersection(chosen).is_empty(),
                                FamilyKind::L => chosen.difference(VertexSet::singleton(x)).is_subset(own),
                            }
                    })
            }
        }
    }

    /// `nb` is `N(chosen) \ chosen`.
    fn go(&self, from: usize, chosen: VertexSet, nb: VertexSet) -> bool {
        let left = self.size - chosen.len();
        if left == 0 {
            return self.accept(chosen, nb);
        }
        for i in from..self.cands.len() {
            if self.cands.len() - i < left {
                break;
            }
            let v = self.cands[i];
            let own = self.g.neighbors(v);
            if self.kind == FamilyKind::H && !own.intersection(chosen).is_empty() {
                continue;
            }
            let mut with = chosen;
            with.insert(v);
            let nb2 = nb.union(own).difference(with);
            // later picks can only absorb members of nb (and only in L)
            let slack = if self.kind == FamilyKind::L { left - 1 } else { 0 };
            if nb2.len() > self.outside + slack {
                continue;
            }
            if self.go(i + 1, with, nb2) {
                return true;
            }
        }
        false
    }
}

fn search(g: &Graph, p: &FamilyParams, kind: FamilyKind, shape: Shape) -> bool {
    if g.order() != p.n || p.validate().is_err() {
        return false;
    }
    let outside = match kind {
        FamilyKind::H => p.delta,
        FamilyKind::L => p.k + 1,
    };
    // X vertices have degree δ in both families
    let cands: Vec<usize> = (0..p.n)
        .filter(|&v| match shape {
            Shape::Subgraph => g.degree(v) <= p.delta,
            Shape::Rigid => g.degree(v) == p.delta,
        })
        .collect();
    BlockSearch { g, kind, shape, size: p.delta - p.k, outside, cands }.go(0, VertexSet::EMPTY, VertexSet::EMPTY)
}

/// Whether some relabelling of `g` is a spanning subgraph of the family graph.
pub fn embeds_in(g: &Graph, p: &FamilyParams, kind: FamilyKind) -> bool {
    search(g, p, kind, Shape::Subgraph)
}

pub fn embeds_in_either(g: &Graph, p: &FamilyParams) -> Option<FamilyKind> {
    FamilyKind::BOTH.into_iter().find(|&kind| embeds_in(g, p, kind))
}

/// Membership in the first tier: `g` is the family graph minus at most
/// `budget` edges inside `Y ∪ Z`, up to isomorphism.
pub fn in_first_tier(g: &Graph, p: &FamilyParams, kind: FamilyKind) -> bool {
    let Ok(inst) = crate::families::FamilyInstance::new(*p, kind) else {
        return false;
    };
    let full = inst.edge_count();
    g.size() <= full && full - g.size() <= deletion_budget(p, kind) && search(g, p, kind, Shape::Rigid)
}

pub fn in_first_tier_either(g: &Graph, p: &FamilyParams) -> Option<FamilyKind> {
    FamilyKind::BOTH.into_iter().find(|&kind| in_first_tier(g, p, kind))
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::families::{sample_member, FamilyInstance, Tier};
    use crate::graph::is_isomorphic;

    fn p(n: usize, k: usize, d: usize) -> FamilyParams {
        FamilyParams::new(n, k, d).unwrap()
    }

    /// Brute force over all relabellings.
    fn naive_embeds(g: &Graph, fam: &Graph) -> bool {
        let n = g.order();
        let edges = g.edges();
        (0..n).permutations(n).any(|perm| edges.iter().all(|&(u, v)| fam.is_adjacent(perm[u], perm[v])))
    }

    /// Brute force over deletion sets inside `E₁`.
    fn naive_first_tier(g: &Graph, inst: &FamilyInstance) -> bool {
        let fam = inst.graph().unwrap();
        let e1 = inst.e1();
        (0..=inst.budget()).any(|s| {
            e1.iter().combinations(s).any(|del| {
                let mut h = fam.clone();
                for &&(u, v) in &del {
                    h.remove_edge(u, v);
                }
                h.size() == g.size() && is_isomorphic(g, &h).unwrap()
            })
        })
    }

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn containment_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for q in [p(7, 0, 2), p(7, 1, 2), p(7, 0, 3), p(6, 1, 3)] {
            for kind in FamilyKind::BOTH {
                let fam = FamilyInstance::new(q, kind).unwrap().graph().unwrap();
                for _ in 0..60 {
                    // subgraphs of the family plus a few random edges
                    let mut g = shuffled(&fam, &mut rng);
                    for (u, v) in g.edges() {
                        if rng.gen_bool(0.3) {
                            g.remove_edge(u, v);
                        }
                    }
                    if rng.gen_bool(0.5) {
                        if let Some(&(u, v)) = g.non_edges().choose(&mut rng) {
                            g.add_edge(u, v);
                        }
                    }
                    assert_eq!(embeds_in(&g, &q, kind), naive_embeds(&g, &fam), "{q} {kind} {g:?}");
                }
            }
        }
    }

    #[test]
    fn first_tier_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for q in [p(8, 0, 2), p(9, 0, 3), p(10, 1, 3), p(10, 0, 4)] {
            for kind in FamilyKind::BOTH {
                let inst = FamilyInstance::new(q, kind).unwrap();
                let mut corpus = sample_member(&inst, Tier::One, 15, 1).unwrap();
                if inst.e1().len() > inst.budget() {
                    corpus.extend(sample_member(&inst, Tier::Two, 10, 2).unwrap());
                }
                // off-shape graphs with the right size
                let fam = inst.graph().unwrap();
                for _ in 0..10 {
                    let mut g = fam.clone();
                    let (u, v) = *g.edges().choose(&mut rng).unwrap();
                    g.remove_edge(u, v);
                    if let Some(&(a, b)) = g.non_edges().choose(&mut rng) {
                        g.add_edge(a, b);
                    }
                    corpus.push(g);
                }
                for g in corpus {
                    let g = shuffled(&g, &mut rng);
                    assert_eq!(in_first_tier(&g, &q, kind), naive_first_tier(&g, &inst), "{q} {kind} {g:?}");
                }
            }
        }
    }

    #[test]
    fn families_embed_in_themselves() {
        for q in [p(12, 1, 3), p(16, 0, 2), p(20, 2, 5)] {
            for kind in FamilyKind::BOTH {
                let g = FamilyInstance::new(q, kind).unwrap().graph().unwrap();
                assert!(embeds_in(&g, &q, kind));
                assert!(in_first_tier(&g, &q, kind));
            }
        }
    }
}
