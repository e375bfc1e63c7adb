//! Held–Karp dynamic programme over units. A state is (set of visited
//! units, last unit, which end it left by), packed two bits per unit.

use super::units::Units;

/// Unit-count cap for the DP table (`2^(m−1)` words).
pub const DP_MAX_UNITS: usize = 24;

fn exit_vertex(units: &Units, state: usize) -> usize {
    let u = state / 2;
    if state.is_multiple_of(2) {
        units.tail(u)
    } else {
        units.head(u)
    }
}

fn entry_vertex(units: &Units, state: usize) -> usize {
    let u = state / 2;
    if state.is_multiple_of(2) {
        units.head(u)
    } else {
        units.tail(u)
    }
}

/// States reachable by entering some unit from vertex `x`.
fn successors(units: &Units, x: usize) -> u64 {
    let mut s = 0u64;
    for w in 1..units.len() {
        if units.adjacent(x, units.head(w)) {
            s |= 1 << (2 * w);
        }
        if units.head(w) != units.tail(w) && units.adjacent(x, units.tail(w)) {
            s |= 1 << (2 * w + 1);
        }
    }
    s
}

/// Unit order after unit 0 (with reversal flags), or `None` when no cycle
/// exists. Caller guarantees `2 ≤ units.len() ≤ DP_MAX_UNITS`.
pub(crate) fn solve(units: &Units) -> Option<Vec<(usize, bool)>> {
    let m = units.len();
    debug_assert!((2..=DP_MAX_UNITS).contains(&m));
    let bit = |w: usize| 1usize << (w - 1);
    let succ: Vec<u64> = (0..2 * m)
        .map(|s| if s < 2 { 0 } else { successors(units, exit_vertex(units, s)) })
        .collect();
    let unit_states = |mask: usize| -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize + 1;
            out |= 3 << (2 * w);
            rest &= rest - 1;
        }
        out
    };
    let full = (1usize << (m - 1)) - 1;
    let mut dp = vec![0u64; full + 1];
    let first = successors(units, units.tail(0));
    let mut s = first;
    while s != 0 {
        let st = s.trailing_zeros() as usize;
        dp[bit(st / 2)] |= 1 << st;
        s &= s - 1;
    }
    for mask in 1..full {
        let cur = dp[mask];
        if cur == 0 {
            continue;
        }
        let blocked = unit_states(mask);
        let mut states = cur;
        while states != 0 {
            let st = states.trailing_zeros() as usize;
            states &= states - 1;
            let mut next = succ[st] & !blocked;
            while next != 0 {
                let nt = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[mask | bit(nt / 2)] |= 1 << nt;
            }
        }
    }
    let start = units.head(0);
    let mut states = dp[full];
    let mut last = None;
    while states != 0 {
        let st = states.trailing_zeros() as usize;
        states &= states - 1;
        if units.adjacent(exit_vertex(units, st), start) {
            last = Some(st);
            break;
        }
    }
    let mut st = last?;
    let mut mask = full;
    let mut order = Vec::with_capacity(m - 1);
    loop {
        order.push((st / 2, st % 2 == 1));
        let entry = entry_vertex(units, st);
        mask &= !bit(st / 2);
        if mask == 0 {
            break;
        }
        let mut cands = dp[mask];
        let mut prev = None;
        while cands != 0 {
            let p = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if units.adjacent(exit_vertex(units, p), entry) {
                prev = Some(p);
                break;
            }
        }
        st = prev.expect("DP predecessor exists");
    }
    order.reverse();
    Some(order)
}
