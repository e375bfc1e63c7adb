//! Edge-count consequences of the Hong and Feng–Yu bounds.

use crate::families::{edge_count_h, FamilyParams};
use crate::Rational;

fn quadratic(p: &FamilyParams, constant: i64) -> Rational {
    let (n, k, d) = (p.n as i64, p.k as i64, p.delta as i64);
    Rational::new(n * n - (2 * d - 2 * k + 1) * n + constant, 2)
}

/// Least size compatible with `λ ≥ n−δ+k−1` and `δ(G) ≥ δ` under Hong's bound:
/// `(n² − (2δ−2k+1)n + 2δ² − 3δk + δ + k² − k)/2`.
pub fn edge_lower_bound_adj(p: &FamilyParams) -> Rational {
    let (k, d) = (p.k as i64, p.delta as i64);
    quadratic(p, 2 * d * d - 3 * d * k + d + k * k - k)
}

/// Least size compatible with `q ≥ 2(n−δ+k−1)` under the Feng–Yu bound:
/// `(n² − (2δ−2k+1)n + 2δ − 2k)/2`.
pub fn edge_lower_bound_q(p: &FamilyParams) -> Rational {
    let (k, d) = (p.k as i64, p.delta as i64);
    quadratic(p, 2 * d - 2 * k)
}

/// Smallest `n₀` such that `bound > e(H_{n,k,δ+1})` for every valid `n` from
/// `n₀` up to `limit`, or `None` if it fails at `limit`.
pub fn exceeds_shifted_family_from(
    k: usize,
    delta: usize,
    limit: usize,
    bound: fn(&FamilyParams) -> Rational,
) -> Option<usize> {
    let lo = 2 * (delta + 1) - k + 1;
    let mut first = None;
    for n in lo..=limit {
        let p = FamilyParams { n, k, delta };
        let above = match edge_count_h(&p, 1) {
            Ok(e) => bound(&p) > Rational::from_integer(e as i64),
            Err(_) => false,
        };
        match (above, first) {
            (true, None) => first = Some(n),
            (false, _) => first = None,
            _ => {}
        }
    }
    first
}
