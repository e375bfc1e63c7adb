//! Corpus generators: exhaustive enumeration, minimum-degree sampling,
//! family perturbations and the near-threshold sampler.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::{edge_count_h, FamilyInstance, FamilyKind, FamilyParams};
use crate::graph::Graph;

/// Enumeration cap for [`enumerate_graphs`].
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of labelled graphs of order `n` with at least `min_edges` edges.
pub fn enumeration_count(n: usize, min_edges: usize) -> u128 {
    let m = (n * n.saturating_sub(1) / 2) as u128;
    let min_edges = min_edges as u128;
    if min_edges > m {
        return 0;
    }
    (0..=m - min_edges).map(|j| binomial(m, j)).sum()
}

/// Every labelled graph on `n` vertices with at least `min_edges` edges,
/// exactly once, by increasing number of missing edges.
pub fn enumerate_graphs(n: usize, min_edges: usize) -> Result<impl Iterator<Item = Graph>> {
    let count = enumeration_count(n, min_edges);
    if count > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            what: "graph enumeration",
            limit: ENUMERATION_LIMIT as u64,
            requested: count.min(u64::MAX as u128) as u64,
        });
    }
    let full = Graph::empty(n)?.complement();
    let pairs = full.edges();
    let m = pairs.len();
    let max_missing = if min_edges > m { None } else { Some(m - min_edges) };
    let sizes = max_missing.into_iter().flat_map(|mm| 0..=mm);
    Ok(sizes.flat_map(move |j| {
        let (full, pairs) = (full.clone(), pairs.clone());
        (0..m).combinations(j).map(move |missing| {
            let mut g = full.clone();
            for i in missing {
                let (u, v) = pairs[i];
                g.remove_edge(u, v);
            }
            g
        })
    }))
}

/// Independent ChaCha8 stream for corpus index `index`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Deterministic sub-seed for a (cell, role) pair.
pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    // splitmix64 over the parts
    let mut x = seed;
    for &p in parts {
        x = x.wrapping_add(p).wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x = z ^ (z >> 31);
    }
    x
}

fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Deletes random edges whose ends both stay at degree ≥ `delta` until the
/// size reaches `target` or no such edge is left.
fn trim_to(g: &mut Graph, delta: usize, target: usize, rng: &mut ChaCha8Rng) {
    while g.size() > target {
        let removable: Vec<_> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| g.degree(u) > delta && g.degree(v) > delta)
            .collect();
        match removable.choose(rng) {
            Some(&(u, v)) => g.remove_edge(u, v),
            None => return,
        }
    }
}

/// Raises every vertex to degree `delta`, preferring low-degree partners.
fn repair_min_degree(g: &mut Graph, delta: usize, rng: &mut ChaCha8Rng) {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in &order {
        while g.degree(v) < delta {
            let cands: Vec<usize> = (0..n).filter(|&w| w != v && !g.is_adjacent(v, w)).collect();
            let low = cands.iter().map(|&w| g.degree(w)).min().expect("delta < n");
            let pool: Vec<usize> = cands.into_iter().filter(|&w| g.degree(w) == low).collect();
            let w = *pool.choose(rng).expect("nonempty");
            g.add_edge(v, w);
        }
    }
}

/// Edge swaps that keep the size and the minimum degree.
fn swap_edges(g: &mut Graph, delta: usize, swaps: usize, rng: &mut ChaCha8Rng) {
    for _ in 0..swaps {
        let edges = g.edges();
        let non = g.non_edges();
        let (Some(&(a, b)), Some(&(c, d))) = (edges.choose(rng), non.choose(rng)) else {
            return;
        };
        let mut h = g.without_edge(a, b);
        h.add_edge(c, d);
        if h.min_degree() >= delta {
            *g = h;
        }
    }
}

fn sample_one(n: usize, delta: usize, target: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut g = Graph::empty(n).ok()?;
    let pairs = Graph::empty(n).ok()?.complement().edges();
    for &(u, v) in pairs.choose_multiple(rng, target.min(pairs.len())) {
        g.add_edge(u, v);
    }
    repair_min_degree(&mut g, delta, rng);
    trim_to(&mut g, delta, target, rng);
    swap_edges(&mut g, delta, 2 * n, rng);
    (g.min_degree() >= delta && g.size().abs_diff(target) <= 2).then_some(g)
}

/// Seeded graphs with minimum degree at least `delta` and size within two of
/// `target_edges`: a uniform random graph at the target size, repaired at
/// deficient vertices, trimmed, then shuffled by degree-safe swaps.
pub fn sample_min_degree(
    n: usize,
    delta: usize,
    target_edges: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Graph>> {
    if n == 0 || delta >= n {
        return Err(Error::parameter(format!("no graph of order {n} has minimum degree {delta}")));
    }
    if (n * delta).div_ceil(2) > target_edges + 2 || target_edges > max_edges(n) + 2 {
        return Err(Error::parameter(format!(
            "target of {target_edges} edges is infeasible for n={n}, delta={delta}"
        )));
    }
    let target = target_edges.min(max_edges(n));
    (0..count as u64)
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            (0..16)
                .find_map(|_| sample_one(n, delta, target, &mut rng))
                .ok_or_else(|| Error::parameter(format!("could not realise {target_edges} edges with minimum degree {delta} at n={n}")))
        })
        .collect()
}

fn random_relabel(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// One random addition or deletion; deletions that would push a degree
/// below `delta` are rejected. Returns false when no move applies.
fn random_move(g: &mut Graph, delta: usize, rng: &mut ChaCha8Rng) -> bool {
    let add = rng.gen_bool(0.5);
    let non = g.non_edges();
    let dels: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| g.degree(u) > delta && g.degree(v) > delta)
        .collect();
    let pick = if add && !non.is_empty() || dels.is_empty() { (&non, true) } else { (&dels, false) };
    match pick.0.choose(rng) {
        Some(&(u, v)) if pick.1 => g.add_edge(u, v),
        Some(&(u, v)) => g.remove_edge(u, v),
        None => return false,
    }
    true
}

/// The walk `G₀ = family, G₁, …, G_ops`, each step a random edge addition or
/// a deletion that keeps the minimum degree at least `δ`. `ops = 0` yields
/// the intact graph alone.
pub fn perturb_family(inst: &FamilyInstance, ops: usize, seed: u64) -> Result<Vec<Graph>> {
    let mut g = inst.graph()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![g.clone()];
    for _ in 0..ops {
        if !random_move(&mut g, inst.params.delta, &mut rng) {
            break;
        }
        out.push(g.clone());
    }
    Ok(out)
}

/// As [`perturb_family`] with deletions only (so every graph stays a
/// subgraph of the family).
pub fn delete_from_family(inst: &FamilyInstance, deletions: usize, seed: u64) -> Result<Graph> {
    let mut g = inst.graph()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = inst.params.delta;
    for _ in 0..deletions {
        let dels: Vec<_> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| g.degree(u) > delta && g.degree(v) > delta)
            .collect();
        match dels.choose(&mut rng) {
            Some(&(u, v)) => g.remove_edge(u, v),
            None => break,
        }
    }
    Ok(g)
}

/// Edge window `[e(H_{n,k,δ+1}) + 1, e(H_{n,k,δ+1}) + n]` of the stability
/// theorems.
pub fn near_threshold_window(p: &FamilyParams) -> Result<(usize, usize)> {
    let base = edge_count_h(p, 1)?;
    Ok((base + 1, (base + p.n).min(max_edges(p.n))))
}

/// Near-threshold graphs with minimum degree at least `δ` and size in the
/// window above. Even indices come from [`sample_min_degree`]; odd indices
/// start from a relabelled `H` or `L`, walk to the window by degree-safe
/// deletions or additions, then take a few size-preserving swaps.
pub fn sample_near_threshold(p: &FamilyParams, count: usize, seed: u64) -> Result<Vec<Graph>> {
    let (lo, hi) = near_threshold_window(p)?;
    if lo > hi {
        return Err(Error::parameter(format!("empty edge window above e(H_(n,k,delta+1)) at {p}")));
    }
    let delta = p.delta;
    let fams = [FamilyInstance::new(*p, FamilyKind::H)?.graph()?, FamilyInstance::new(*p, FamilyKind::L)?.graph()?];
    (0..count as u64)
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let target = rng.gen_range(lo..=hi);
            if i % 2 == 0 {
                let g = (0..16).find_map(|_| sample_one(p.n, delta, target, &mut rng));
                if let Some(g) = g.filter(|g| (lo..=hi).contains(&g.size())) {
                    return Ok(g);
                }
            }
            let mut g = random_relabel(&fams[rng.gen_range(0..2)], &mut rng);
            while g.size() > target {
                let before = g.size();
                trim_to(&mut g, delta, target, &mut rng);
                if g.size() == before {
                    break;
                }
            }
            while g.size() < target {
                let non = g.non_edges();
                let &(u, v) = non.choose(&mut rng).expect("below the complete graph");
                g.add_edge(u, v);
            }
            let swaps = rng.gen_range(0..=3);
            swap_edges(&mut g, delta, swaps, &mut rng);
            Ok(g)
        })
        .collect()
}
