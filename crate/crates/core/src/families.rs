//! The extremal graphs `H_{n,k,δ} = K_δ ∨ (K_{n−2δ+k} ∪ I_{δ−k})` and
//! `L_{n,k,δ} = K_{k+1} ∨ (K_{n−δ−1} ∪ K_{δ−k})`, their deletion families,
//! and the 0/1 test vector.
//!
//! Vertices are labelled Y first, then Z, then X, each block contiguous.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DenseGraph, Graph, VertexSet, DENSE_MAX_ORDER};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
}

impl FamilyParams {
    /// Validated parameters: `δ ≥ k+1`, `n ≥ 2δ − k + 1`, and `n` within
    /// the dense construction cap.
    pub fn new(n: usize, k: usize, delta: usize) -> Result<Self> {
        let p = FamilyParams { n, k, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let FamilyParams { n, k, delta } = *self;
        if delta < k + 1 {
            return Err(Error::parameter(format!("need delta ≥ k+1, got k={k}, delta={delta}")));
        }
        if n < 2 * delta - k + 1 {
            return Err(Error::parameter(format!(
                "need n ≥ 2·delta − k + 1 = {}, got n={n}",
                2 * delta - k + 1
            )));
        }
        if n > DENSE_MAX_ORDER {
            return Err(Error::Capacity {
                what: "family order",
                limit: DENSE_MAX_ORDER as u64,
                requested: n as u64,
            });
        }
        Ok(())
    }

    /// `n − δ + k`, the order of the big clique both families contain.
    pub fn clique_order(&self) -> usize {
        self.n - self.delta + self.k
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={},k={},delta={}", self.n, self.k, self.delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    H,
    L,
}

impl FamilyKind {
    pub const BOTH: [FamilyKind; 2] = [FamilyKind::H, FamilyKind::L];
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::H => "H",
            FamilyKind::L => "L",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" => Ok(FamilyKind::H),
            "L" | "l" => Ok(FamilyKind::L),
            _ => Err(Error::parameter(format!("unknown family kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    X,
    Y,
    Z,
}

/// Contiguous vertex blocks of a family graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub y: Range<usize>,
    pub z: Range<usize>,
    pub x: Range<usize>,
}

impl Partition {
    pub fn class_of(&self, v: usize) -> VertexClass {
        if self.y.contains(&v) {
            VertexClass::Y
        } else if self.z.contains(&v) {
            VertexClass::Z
        } else {
            VertexClass::X
        }
    }

    pub fn block(&self, class: VertexClass) -> Range<usize> {
        match class {
            VertexClass::X => self.x.clone(),
            VertexClass::Y => self.y.clone(),
            VertexClass::Z => self.z.clone(),
        }
    }

    /// The block as a bitset; only meaningful for orders up to 64.
    pub fn set(&self, class: VertexClass) -> VertexSet {
        self.block(class).collect()
    }
}

/// An intact family graph with its partition. The graph itself is built on
/// demand, as a bitset [`Graph`] (order ≤ 64) or a [`DenseGraph`] (≤ 128).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub params: FamilyParams,
    pub kind: FamilyKind,
    pub partition: Partition,
}

impl FamilyInstance {
    pub fn new(params: FamilyParams, kind: FamilyKind) -> Result<Self> {
        params.validate()?;
        let FamilyParams { n, k, delta } = params;
        let (ny, nz) = match kind {
            FamilyKind::H => (delta, n + k - 2 * delta),
            FamilyKind::L => (k + 1, n - delta - 1),
        };
        Ok(FamilyInstance {
            params,
            kind,
            partition: Partition { y: 0..ny, z: ny..ny + nz, x: ny + nz..n },
        })
    }

    pub fn order(&self) -> usize {
        self.params.n
    }

    fn fill<G>(&self, g: &mut G, add: impl Fn(&mut G, usize, usize)) {
        let Partition { y, z, x } = &self.partition;
        let yz = y.start..z.end;
        for u in yz.clone() {
            for v in u + 1..yz.end {
                add(g, u, v);
            }
        }
        for u in y.clone() {
            for v in x.clone() {
                add(g, u, v);
            }
        }
        if self.kind == FamilyKind::L {
            for u in x.clone() {
                for v in u + 1..x.end {
                    add(g, u, v);
                }
            }
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(self.order())?;
        self.fill(&mut g, |g, u, v| g.add_edge(u, v));
        Ok(g)
    }

    pub fn dense(&self) -> DenseGraph {
        let mut g = DenseGraph::empty(self.order()).expect("validated order");
        self.fill(&mut g, |g, u, v| g.add_edge(u, v));
        g
    }

    /// Edges with both ends in `Y ∪ Z`, lexicographic.
    pub fn e1(&self) -> Vec<(usize, usize)> {
        let end = self.partition.z.end;
        (0..end).flat_map(|u| (u + 1..end).map(move |v| (u, v))).collect()
    }

    pub fn budget(&self) -> usize {
        deletion_budget(&self.params, self.kind)
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            FamilyKind::H => edge_count_h(&self.params, 0).expect("validated params"),
            FamilyKind::L => edge_count_l(&self.params).expect("validated params"),
        }
    }
}

pub fn build_h(p: FamilyParams) -> Result<FamilyInstance> {
    FamilyInstance::new(p, FamilyKind::H)
}

pub fn build_l(p: FamilyParams) -> Result<FamilyInstance> {
    FamilyInstance::new(p, FamilyKind::L)
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// `e(H_{n,k,δ+shift}) = C(n − δ' + k, 2) + δ'(δ' − k)` with `δ' = δ + shift`.
pub fn edge_count_h(p: &FamilyParams, shift: i64) -> Result<usize> {
    let d = p.delta as i64 + shift;
    if d < 0 {
        return Err(Error::parameter(format!("delta + shift = {d} is negative")));
    }
    let q = FamilyParams::new(p.n, p.k, d as usize)?;
    Ok(binom2(q.clique_order()) + q.delta * (q.delta - q.k))
}

/// `e(L_{n,k,δ}) = C(k+1, 2) + C(n−δ−1, 2) + C(δ−k, 2) + (k+1)(n−k−1)`.
pub fn edge_count_l(p: &FamilyParams) -> Result<usize> {
    p.validate()?;
    let FamilyParams { n, k, delta } = *p;
    Ok(binom2(k + 1) + binom2(n - delta - 1) + binom2(delta - k) + (k + 1) * (n - k - 1))
}

/// Largest deletion allowed in the first-tier family: `⌊δ(δ−k)/4⌋` for H,
/// `⌊(k+1)(δ−k)/4⌋` for L.
pub fn deletion_budget(p: &FamilyParams, kind: FamilyKind) -> usize {
    let gap = p.delta.saturating_sub(p.k);
    match kind {
        FamilyKind::H => p.delta * gap / 4,
        FamilyKind::L => (p.k + 1) * gap / 4,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tier {
    /// At most `budget` deleted edges.
    One,
    /// Exactly `budget + 1` deleted edges.
    Two,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Tier::One),
            "2" => Ok(Tier::Two),
            _ => Err(Error::parameter(format!("tier must be 1 or 2, got {s:?}"))),
        }
    }
}

/// Seeded deletion sets from `E₁`. Tier one draws a size uniformly from
/// `0..=budget`, tier two uses `budget + 1`; the subset is uniform.
pub fn sample_deletions(
    inst: &FamilyInstance,
    tier: Tier,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<(usize, usize)>>> {
    let e1 = inst.e1();
    let budget = inst.budget();
    if tier == Tier::Two && e1.len() < budget + 1 {
        return Err(Error::parameter(format!(
            "|E1| = {} is below budget + 1 = {}",
            e1.len(),
            budget + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let size = match tier {
            Tier::One => rng.gen_range(0..=budget.min(e1.len())),
            Tier::Two => budget + 1,
        };
        let mut pick: Vec<_> = index::sample(&mut rng, e1.len(), size).into_iter().map(|i| e1[i]).collect();
        pick.sort_unstable();
        out.push(pick);
    }
    Ok(out)
}

pub fn sample_member(inst: &FamilyInstance, tier: Tier, count: usize, seed: u64) -> Result<Vec<Graph>> {
    let base = inst.graph()?;
    Ok(sample_deletions(inst, tier, count, seed)?
        .into_iter()
        .map(|del| {
            let mut g = base.clone();
            for (u, v) in del {
                g.remove_edge(u, v);
            }
            g
        })
        .collect())
}

/// As [`sample_member`], for orders beyond the bitset cap.
pub fn sample_member_dense(
    inst: &FamilyInstance,
    tier: Tier,
    count: usize,
    seed: u64,
) -> Result<Vec<DenseGraph>> {
    let base = inst.dense();
    Ok(sample_deletions(inst, tier, count, seed)?
        .into_iter()
        .map(|del| {
            let mut g = base.clone();
            for (u, v) in del {
                g.remove_edge(u, v);
            }
            g
        })
        .collect())
}

/// Indicator of `Y ∪ Z`.
pub fn test_vector<T: Real>(inst: &FamilyInstance) -> Vec<T> {
    (0..inst.order())
        .map(|v| if v < inst.partition.z.end { T::one() } else { T::zero() })
        .collect()
}

/// Whether `g` is isomorphic to the intact family graph.
///
/// The universal vertices must number exactly `|Y|`, and removing them must
/// leave a disjoint union of cliques of the right orders.
pub fn recognize(g: &Graph, p: &FamilyParams, kind: FamilyKind) -> bool {
    let Ok(inst) = FamilyInstance::new(*p, kind) else {
        return false;
    };
    let n = p.n;
    if g.order() != n {
        return false;
    }
    let mut want = vec![p.delta; inst.partition.x.len()];
    want.extend(std::iter::repeat_n(n - 1, inst.partition.y.len()));
    want.extend(std::iter::repeat_n(p.clique_order() - 1, inst.partition.z.len()));
    want.sort_unstable();
    let mut have = g.degrees();
    have.sort_unstable();
    if have != want {
        return false;
    }
    let universal: VertexSet = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    if universal.len() != inst.partition.y.len() {
        return false;
    }
    let rest = g.vertices().difference(universal);
    let mut sizes = Vec::new();
    let mut left = rest;
    while let Some(v) = left.first() {
        let comp = g.reach_within(v, rest);
        let m = comp.len();
        if g.edges_within(comp) != m * (m - 1) / 2 {
            return false;
        }
        sizes.push(m);
        left = left.difference(comp);
    }
    sizes.sort_unstable();
    let mut want_sizes = match kind {
        FamilyKind::H => {
            let mut s = vec![1; p.delta - p.k];
            s.push(inst.partition.z.len());
            s
        }
        FamilyKind::L => vec![inst.partition.z.len(), p.delta - p.k],
    };
    want_sizes.sort_unstable();
    sizes == want_sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_number, complete_graph, independent_graph, is_isomorphic, join, disjoint_union};

    fn p(n: usize, k: usize, d: usize) -> FamilyParams {
        FamilyParams::new(n, k, d).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyParams::new(12, 3, 3).is_err());
        assert!(FamilyParams::new(5, 1, 3).is_err());
        assert!(FamilyParams::new(6, 1, 3).is_ok());
        assert!(matches!(FamilyParams::new(129, 0, 2), Err(Error::Capacity { .. })));
    }

    #[test]
    fn h_12_1_3() {
        let inst = build_h(p(12, 1, 3)).unwrap();
        let g = inst.graph().unwrap();
        assert_eq!(g.size(), 51);
        assert_eq!(g.min_degree(), 3);
        assert_eq!(edge_count_h(&inst.params, 0).unwrap(), 51);
        assert_eq!(edge_count_h(&inst.params, 1).unwrap(), 48);
        for v in inst.partition.x.clone() {
            assert_eq!(g.degree(v), 3);
        }
        for v in inst.partition.y.clone() {
            assert_eq!(g.degree(v), 11);
        }
        for v in inst.partition.z.clone() {
            assert_eq!(g.degree(v), 9);
        }
        let h: Vec<f64> = test_vector(&inst);
        assert_eq!(h.iter().filter(|&&x| x == 1.0).count(), 10);
    }

    #[test]
    fn families_match_join_constructions() {
        for (n, k, d) in [(9, 0, 2), (10, 1, 3), (12, 2, 4), (8, 0, 1)] {
            let pp = p(n, k, d);
            let kd = complete_graph(d).unwrap();
            let rest = disjoint_union(&complete_graph(n + k - 2 * d).unwrap(), &independent_graph(d - k).unwrap()).unwrap();
            let h = join(&kd, &rest).unwrap();
            assert!(is_isomorphic(&h, &build_h(pp).unwrap().graph().unwrap()).unwrap());
            let rest = disjoint_union(&complete_graph(n - d - 1).unwrap(), &complete_graph(d - k).unwrap()).unwrap();
            let l = join(&complete_graph(k + 1).unwrap(), &rest).unwrap();
            let built = build_l(pp).unwrap().graph().unwrap();
            assert!(is_isomorphic(&l, &built).unwrap());
            assert_eq!(built.size(), edge_count_l(&pp).unwrap());
            assert_eq!(built.min_degree(), d);
        }
    }

    #[test]
    fn l_clique_on_x_and_y() {
        let inst = build_l(p(12, 1, 3)).unwrap();
        let g = inst.graph().unwrap();
        let xy = inst.partition.set(VertexClass::X).union(inst.partition.set(VertexClass::Y));
        assert_eq!(clique_number(&g.induced(xy)), 4);
    }

    #[test]
    fn budgets() {
        assert_eq!(deletion_budget(&p(12, 1, 3), FamilyKind::H), 1);
        assert_eq!(deletion_budget(&p(12, 1, 3), FamilyKind::L), 1);
        assert_eq!(deletion_budget(&p(12, 0, 1), FamilyKind::H), 0);
    }

    #[test]
    fn sampling_is_seeded_and_sized() {
        let inst = build_h(p(14, 1, 4)).unwrap();
        let a = sample_deletions(&inst, Tier::One, 20, 7).unwrap();
        assert_eq!(a, sample_deletions(&inst, Tier::One, 20, 7).unwrap());
        assert!(a.iter().all(|d| d.len() <= inst.budget()));
        let b = sample_member(&inst, Tier::Two, 5, 1).unwrap();
        assert!(b.iter().all(|g| g.size() == inst.edge_count() - inst.budget() - 1));
        let dense = sample_member_dense(&inst, Tier::Two, 5, 1).unwrap();
        for (g, d) in b.iter().zip(&dense) {
            assert_eq!(d.to_graph().unwrap(), *g);
        }
    }

    #[test]
    fn recognizer_agrees_with_isomorphism() {
        for (n, k, d) in [(10, 0, 2), (10, 1, 3), (10, 2, 3), (7, 0, 3), (10, 1, 5)] {
            let pp = p(n, k, d);
            for kind in FamilyKind::BOTH {
                let inst = FamilyInstance::new(pp, kind).unwrap();
                let g = inst.graph().unwrap();
                let perm: Vec<usize> = (0..n).rev().collect();
                assert!(recognize(&g.relabel(&perm), &pp, kind));
                let (u, v) = inst.e1()[inst.e1().len() - 1];
                assert!(!recognize(&g.without_edge(u, v), &pp, kind));
            }
        }
        // n = 2δ − k + 1: X and Z degrees coincide
        let pp = p(7, 0, 3);
        let h = build_h(pp).unwrap().graph().unwrap();
        let l = build_l(pp).unwrap().graph().unwrap();
        assert_eq!(recognize(&l, &pp, FamilyKind::H), is_isomorphic(&l, &h).unwrap());
    }
}
