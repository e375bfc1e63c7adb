//! Depth-first search over units with connectivity, end-degree and
//! forcing pruning. The partial cycle is itself treated as a unit with
//! ends `start` and `x`.

use super::units::Units;

pub(crate) enum Outcome {
    Found(Vec<(usize, bool)>),
    Absent,
    OutOfBudget,
}

struct Search<'a> {
    units: &'a Units,
    partner: Vec<usize>,
    unit_of: Vec<usize>,
    members: Vec<u64>,
    start: usize,
    nodes: u64,
    budget: u64,
    trail: Vec<(usize, bool)>,
}

impl Search<'_> {
    fn reach_covers(&self, x: usize, alive: u64) -> bool {
        let allowed = alive | (1 << x) | (1 << self.start);
        let mut seen = (1u64 << x) | (1 << self.start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.units.adj[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        alive & !seen == 0
    }

    /// `None` when the node budget runs out.
    fn go(&mut self, x: usize, open: u64, alive: u64) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let adj = &self.units.adj;
        if open == 0 {
            return Some(adj[x] & (1 << self.start) != 0);
        }
        let root = x == self.start;
        if adj[x] & open == 0 || (!root && adj[self.start] & open == 0) {
            return Some(false);
        }
        let pool = open | (1 << x) | (1 << self.start);
        let mut forced_next: Option<usize> = None;
        let mut forced_last: Option<usize> = None;
        let mut avail = [0u32; 64];
        let mut rest = open;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let p = self.partner[v];
            let need = if p == v { 2 } else { 1 };
            let av = adj[v] & pool & !(1 << p);
            let cnt = av.count_ones();
            if cnt < need {
                return Some(false);
            }
            avail[v] = cnt;
            if cnt == need && !root {
                if av & (1 << x) != 0 {
                    match forced_next {
                        Some(w) if w != v => return Some(false),
                        _ => forced_next = Some(v),
                    }
                }
                if av & (1 << self.start) != 0 {
                    match forced_last {
                        Some(w) if w != v => return Some(false),
                        _ => forced_last = Some(v),
                    }
                }
            }
        }
        if !self.reach_covers(x, alive) {
            return Some(false);
        }
        let mut cands: Vec<usize> = match forced_next {
            Some(v) => vec![v],
            None => {
                let mut c = Vec::new();
                let mut r = adj[x] & open;
                while r != 0 {
                    let v = r.trailing_zeros() as usize;
                    r &= r - 1;
                    c.push(v);
                }
                c.sort_by_key(|&v| avail[v]);
                c
            }
        };
        // the unit forced to close the cycle goes last unless nothing else remains
        if let Some(l) = forced_last {
            let lu = self.unit_of[l];
            if open & !self.members[lu] != 0 {
                cands.retain(|&v| self.unit_of[v] != lu);
            }
        }
        for e in cands {
            let u = self.unit_of[e];
            let t = self.partner[e];
            let rev = e != self.units.head(u);
            self.trail.push((u, rev));
            let ends = (1u64 << e) | (1 << t);
            match self.go(t, open & !ends, alive & !self.members[u]) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.trail.pop();
        }
        Some(false)
    }
}

/// Caller guarantees at least two units and order ≥ 3.
pub(crate) fn solve(units: &Units, budget: u64) -> Outcome {
    let n = units.order();
    let mut partner = vec![usize::MAX; n];
    let mut unit_of = vec![usize::MAX; n];
    let mut members = vec![0u64; units.len()];
    let mut open = 0u64;
    let mut alive = 0u64;
    for (u, p) in units.paths.iter().enumerate() {
        let (h, t) = (p[0], p[p.len() - 1]);
        partner[h] = t;
        partner[t] = h;
        for &v in p {
            unit_of[v] = u;
            members[u] |= 1 << v;
        }
        if u > 0 {
            open |= (1 << h) | (1 << t);
            alive |= members[u];
        }
    }
    let mut s = Search {
        units,
        partner,
        unit_of,
        members,
        start: units.head(0),
        nodes: 0,
        budget,
        trail: Vec::new(),
    };
    match s.go(units.tail(0), open, alive) {
        Some(true) => Outcome::Found(s.trail),
        Some(false) => Outcome::Absent,
        None => Outcome::OutOfBudget,
    }
}
