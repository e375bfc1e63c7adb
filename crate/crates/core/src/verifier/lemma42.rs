//! Numeric checks of the four claims inside the proof that second-tier
//! deletions push `q` below `2(n−δ+k−1)`.
//!
//! The claims are stated for `H`-type members, with classes read off the
//! member itself: `Y₁` are the universal Y vertices, `Z₁` the Z vertices of
//! full degree `n−δ+k−1`, and `Y₂`, `Z₂` the rest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyInstance, FamilyKind};
use crate::graph::{Adjacency, DenseGraph};
use crate::spectral::q_radius;

/// Margins of one member; positive means the claim holds strictly.
/// `None` marks a claim skipped because a class it compares is empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimMargins {
    pub q: f64,
    /// `q − (2(n−δ+k−1) − 1)`.
    pub claim1: f64,
    /// `δ/(q−δ) − max f_x`.
    pub claim2: f64,
    /// `f_{y₂} < f_{z₁}`, `f_{z₂} < f_{z₁}`, `f_{y₂} < f_{y₁}`, `f_{z₁} < f_{y₁}`.
    pub claim3: [Option<f64>; 4],
    /// `min f_w − (1 − ((δ+2)(δ−k)+6)/(2(q−n+2)))` over `w ∈ Y ∪ Z`.
    pub claim4: f64,
    /// The same with `(δ−2)` in place of `(δ+2)`.
    pub claim4_alt: f64,
    /// `q − (n−1)`; the claims assume it is positive.
    pub q_over_max_degree: f64,
}

/// Round-off allowance for the non-strict claims 2 and 4.
pub const CLAIM_TOLERANCE: f64 = 1e-9;

impl ClaimMargins {
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.claim1 <= 0.0 {
            out.push("claim1");
        }
        if self.claim2 < -CLAIM_TOLERANCE {
            out.push("claim2");
        }
        for (m, name) in self.claim3.iter().zip(["claim3a", "claim3b", "claim3c", "claim3d"]) {
            if m.is_some_and(|m| m <= 0.0) {
                out.push(name);
            }
        }
        if self.claim4 < -CLAIM_TOLERANCE {
            out.push("claim4");
        }
        out
    }
}

fn extremes(f: &[f64], set: &[usize]) -> Option<(f64, f64)> {
    let mut it = set.iter().map(|&v| f[v]);
    let first = it.next()?;
    Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
}

/// Claim margins of an `H`-type member laid out like `inst`.
pub fn claims_for_member(inst: &FamilyInstance, g: &DenseGraph) -> Result<ClaimMargins> {
    if inst.kind != FamilyKind::H {
        return Err(Error::parameter("the claims are stated for H-type members"));
    }
    let p = inst.params;
    let (n, k, d) = (p.n, p.k, p.delta);
    if g.order() != n {
        return Err(Error::parameter(format!("member order {} differs from n={n}", g.order())));
    }
    let pair = q_radius(g)?;
    let q = pair.radius;
    let f = &pair.vector;
    let part = &inst.partition;
    let (nf, df, kf) = (n as f64, d as f64, k as f64);
    let thr = 2.0 * (nf - df + kf - 1.0);

    let x: Vec<usize> = part.x.clone().collect();
    let fx_max = x.iter().map(|&v| f[v]).fold(0.0, f64::max);

    let (y1, y2): (Vec<usize>, Vec<usize>) = part.y.clone().partition(|&v| g.degree(v) == n - 1);
    let (z1, z2): (Vec<usize>, Vec<usize>) = part.z.clone().partition(|&v| g.degree(v) == p.clique_order() - 1);
    let [y1e, y2e, z1e, z2e] = [&y1, &y2, &z1, &z2].map(|s| extremes(f, s));
    // `a < b` for every pair: min(b) − max(a)
    let below = |a: Option<(f64, f64)>, b: Option<(f64, f64)>| Some(b?.0 - a?.1);

    let yz: Vec<usize> = (part.y.start..part.z.end).collect();
    let f_min = yz.iter().map(|&v| f[v]).fold(f64::INFINITY, f64::min);
    let denom = 2.0 * (q - nf + 2.0);
    let dk = df - kf;
    Ok(ClaimMargins {
        q,
        claim1: q - (thr - 1.0),
        claim2: df / (q - df) - fx_max,
        claim3: [below(y2e, z1e), below(z2e, z1e), below(y2e, y1e), below(z1e, y1e)],
        claim4: f_min - (1.0 - ((df + 2.0) * dk + 6.0) / denom),
        claim4_alt: f_min - (1.0 - ((df - 2.0) * dk + 6.0) / denom),
        q_over_max_degree: q - (nf - 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_h, sample_member_dense, FamilyParams, Tier};

    #[test]
    fn intact_family_has_trivial_classes() {
        let inst = build_h(FamilyParams::new(40, 1, 3).unwrap()).unwrap();
        let m = claims_for_member(&inst, &inst.dense()).unwrap();
        // no deletions: Y₂ and Z₂ are empty
        assert_eq!(m.claim3[0], None);
        assert_eq!(m.claim3[1], None);
        assert!(m.claim3[3].unwrap() > 0.0);
        assert!(m.claim1 > 0.0 && m.claim2 > 0.0);
    }

    #[test]
    fn second_tier_members_at_n_60() {
        let inst = build_h(FamilyParams::new(60, 0, 2).unwrap()).unwrap();
        for g in sample_member_dense(&inst, Tier::Two, 5, 3).unwrap() {
            let m = claims_for_member(&inst, &g).unwrap();
            assert!(m.q_over_max_degree > 0.0);
            assert!(m.claim1 > 0.0, "{m:?}");
            assert!(m.claim2 > -CLAIM_TOLERANCE, "{m:?}");
            // (δ−2) uses a smaller constant, so its margin is the smaller one
            assert!(m.claim4_alt <= m.claim4);
        }
    }
}
