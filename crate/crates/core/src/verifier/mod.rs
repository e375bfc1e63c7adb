//! Theorem-by-theorem verification: corpora, predicates, counterexample
//! collection and replayable reports.
//!
//! Work fans out over the current rayon pool. Every corpus item draws from
//! its own seeded stream and results are merged in (cell, index) order, so a
//! report depends only on (theorem, grid, corpus spec, seed).

pub mod bounds;
mod checks;
pub mod corpus;
pub mod lemma42;
pub mod membership;
mod watchdog;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyInstance, FamilyKind, FamilyParams};

pub use bounds::{edge_lower_bound_adj, edge_lower_bound_q};
pub use corpus::{enumerate_graphs, perturb_family, sample_min_degree, sample_near_threshold};
pub use lemma42::{claims_for_member, ClaimMargins};
pub use membership::{embeds_in, embeds_in_either, in_first_tier, in_first_tier_either};
pub use watchdog::{bound_margins, global_watchdog, WatchdogSummary, BOUND_TOLERANCE};

macro_rules! theorem_ids {
    ($($variant:ident => $tag:literal, $about:literal;)*) => {
        /// The registered checks.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum TheoremId {
            $(#[serde(rename = $tag)] $variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn tag(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $tag,)*
                }
            }

            /// One-line statement of what the check asserts.
            pub fn about(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $about,)*
                }
            }
        }
    };
}

theorem_ids! {
    Thm11 => "thm11", "e(G) ≥ C(n−1,2)+1 ⇒ Hamiltonian, except K1∨(K1∪K(n−2)) and K2∨I3 at n=5 (exhaustive)";
    Thm12 => "thm12", "δ(G) ≥ δ and e(G) > max{e(H(n,δ)), e(H(n,⌊(n−1)/2⌋))} ⇒ Hamiltonian";
    Cor13 => "cor13", "n ≥ 6δ, δ(G) ≥ δ, e(G) ≥ e(H(n,δ)) ⇒ Hamiltonian unless G = H(n,δ)";
    DiracK => "dirac-k", "δ(G) ≥ (n+k)/2 ⇒ k-Hamiltonian";
    Thm21 => "thm21", "δ(G) ≥ δ, λ ≥ n−δ+k−1 ⇒ k-edge-Hamiltonian unless G is H or L (asymptotic)";
    Thm23 => "thm23", "δ(G) ≥ δ, q ≥ 2(n−δ+k−1) ⇒ k-edge-Hamiltonian unless G is in the first tier (asymptotic)";
    Thm25 => "thm25", "δ(G) ≥ δ, λ ≥ n−δ+k−1 ⇒ k-Hamiltonian unless G is H or L (asymptotic)";
    Thm27 => "thm27", "δ(G) ≥ δ, q ≥ 2(n−δ+k−1) ⇒ k-Hamiltonian unless G is in the first tier (asymptotic)";
    Thm34 => "thm34", "G is k-(edge-)Hamiltonian iff its (n+k)-closure is";
    Thm35 => "thm35", "n ≥ 6δ−5k+5, δ(G) ≥ δ, e(G) > e(H(n,k,δ+1)) ⇒ k-edge-Hamiltonian unless G ⊆ H or G ⊆ L";
    Thm36 => "thm36", "δ(G) ≥ δ, e(G) > e(H(n,k,δ+1)) ⇒ k-Hamiltonian unless G ⊆ H or G ⊆ L (asymptotic)";
    Thm37 => "thm37", "G ⊆ H or L with δ(G) ≥ δ ⇒ λ < n−δ+k−1 unless G is H or L (asymptotic)";
    Lem41 => "lem41", "first-tier members have q ≥ 2(n−δ+k−1) and are neither k-edge- nor k-Hamiltonian";
    Lem42 => "lem42", "second-tier members have q < 2(n−δ+k−1) (asymptotic)";
    Lem42Claims => "lem42claims", "Claims 1–4 inside the second-tier argument, on sampled H-type members";
    Bound31 => "bound31", "λ ≤ (δ−1)/2 + √(2e − nδ + (δ+1)²/4)";
    Bound32 => "bound32", "q ≤ 2e/(n−1) + n − 2";
    KelmansMono => "kelmans-mono", "a Kelmans move does not decrease λ";
    Lem33 => "lem33", "rotating edges from v to u with f_u ≥ f_v increases q";
}

impl TheoremId {
    /// Statements that only hold for sufficiently large `n`; their reports
    /// carry the empirical threshold.
    pub fn is_asymptotic(self) -> bool {
        use TheoremId::*;
        matches!(self, Thm21 | Thm23 | Thm25 | Thm27 | Thm36 | Thm37 | Lem42 | Lem42Claims)
    }

    /// Whether `p` is a valid cell for this check.
    pub fn check_cell(self, p: &FamilyParams) -> Result<()> {
        use TheoremId::*;
        p.validate()?;
        let FamilyParams { n, k, delta } = *p;
        let bad = |msg: String| Err(Error::parameter(format!("{}: {msg} (cell {p})", self.tag())));
        let bitset = |what: &str| if n > 64 { bad(format!("{what} needs n ≤ 64")) } else { Ok(()) };
        match self {
            Thm11 | Bound31 | Bound32 | KelmansMono | Lem33 => {
                if n < 3 {
                    return bad("n ≥ 3 required".into());
                }
                bitset("the graph corpus")
            }
            Thm12 => {
                if k != 0 || delta < 1 || 2 * delta > n - 1 {
                    return bad("need k = 0 and 1 ≤ δ ≤ (n−1)/2".into());
                }
                bitset("the graph corpus")
            }
            Cor13 => {
                if k != 0 || n < 6 * delta {
                    return bad("need k = 0 and n ≥ 6δ".into());
                }
                bitset("the graph corpus")
            }
            DiracK | Thm34 => {
                if n < k + 3 {
                    return bad("need n − k ≥ 3".into());
                }
                bitset("the deciders")
            }
            Thm21 | Thm23 | Thm25 | Thm27 | Thm37 => {
                if delta < k + 2 {
                    return bad("need δ ≥ k+2".into());
                }
                bitset("the deciders")
            }
            Thm35 => {
                if 6 * delta + 5 > n + 5 * k {
                    return bad("need n ≥ 6δ−5k+5".into());
                }
                bitset("the deciders")
            }
            Thm36 => bitset("the deciders"),
            Lem41 => Ok(()),
            Lem42 | Lem42Claims => {
                for kind in FamilyKind::BOTH {
                    let inst = FamilyInstance::new(*p, kind)?;
                    if inst.e1().len() <= inst.budget() {
                        return bad(format!("no second-tier {kind} members (|E1| ≤ budget)"));
                    }
                }
                Ok(())
            }
        }
    }

    fn default_samples(self) -> usize {
        use TheoremId::*;
        match self {
            Thm21 | Thm23 | Thm25 | Thm27 | Thm35 | Thm36 => 1000,
            Lem41 => 200,
            Lem42 | Lem42Claims => 100,
            _ => 1000,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::parameter(format!("unknown theorem tag {s:?}")))
    }
}

/// Corpus sizes and switches. Zero `samples` selects the per-theorem default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusSpec {
    /// Random corpus items per cell (per family kind where both are used).
    pub samples: usize,
    /// Maximum walk length for family perturbations.
    pub ops: usize,
    /// Corpora up to this many labelled graphs are enumerated exhaustively.
    pub exhaustive_limit: u64,
    /// Largest order at which first-tier members also go through the deciders.
    pub decider_max_n: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { samples: 0, ops: 3, exhaustive_limit: 1_000_000, decider_max_n: 16 }
    }
}

impl CorpusSpec {
    pub fn with_samples(samples: usize) -> Self {
        CorpusSpec { samples, ..Self::default() }
    }

    fn samples_for(&self, t: TheoremId) -> usize {
        if self.samples == 0 {
            t.default_samples()
        } else {
            self.samples
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub params: FamilyParams,
    pub details: String,
}

/// Per-cell tallies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CellSummary {
    pub params: FamilyParams,
    /// Graphs generated, duplicates included.
    pub corpus: usize,
    pub distinct: usize,
    /// Distinct graphs meeting the hypotheses.
    pub satisfying: usize,
    /// Hypothesis-satisfying graphs excused by the exception set.
    pub exceptions: usize,
    pub violations: usize,
    pub skipped: usize,
    /// Smallest slack of the checked inequality, where there is one.
    pub min_margin: Option<f64>,
    pub max_margin: Option<f64>,
    pub notes: Vec<String>,
}

impl CellSummary {
    pub fn is_vacuous(&self) -> bool {
        self.satisfying == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub grid: Vec<FamilyParams>,
    pub corpus_spec: CorpusSpec,
    pub corpus_size: usize,
    pub violations: Vec<Violation>,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub empirical_notes: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vacuous_cells: Vec<FamilyParams>,
    pub cells: Vec<CellSummary>,
    pub watchdog: WatchdogSummary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// 0 clean, 2 violations, 3 vacuous cells (violations take precedence).
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            2
        } else if !self.vacuous_cells.is_empty() {
            3
        } else {
            0
        }
    }

    /// Violations recorded at order `n`.
    pub fn violations_at(&self, n: usize) -> usize {
        self.violations.iter().filter(|v| v.params.n == n).count()
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.cells.iter().filter_map(|c| c.min_margin).reduce(f64::min)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    /// One header line and one row per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,n,k,delta,corpus,distinct,satisfying,exceptions,violations,skipped,minMargin,maxMargin\n");
        let fmt_opt = |m: Option<f64>| m.map(|m| format!("{m:.12e}")).unwrap_or_default();
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                self.theorem,
                c.params.n,
                c.params.k,
                c.params.delta,
                c.corpus,
                c.distinct,
                c.satisfying,
                c.exceptions,
                c.violations,
                c.skipped,
                fmt_opt(c.min_margin),
                fmt_opt(c.max_margin),
            ));
        }
        out
    }
}

/// Raw outcome of one cell before assembly.
pub(crate) struct CellOutcome {
    pub summary: CellSummary,
    pub violations: Vec<Violation>,
}

/// Runs `theorem` on every cell of `grid`.
pub fn verify(theorem: TheoremId, grid: &[FamilyParams], spec: &CorpusSpec, seed: u64) -> Result<VerificationReport> {
    if grid.is_empty() {
        return Err(Error::parameter("empty grid"));
    }
    for p in grid {
        theorem.check_cell(p)?;
    }
    let start = Instant::now();
    let dog = watchdog::Watchdog::default();
    let samples = spec.samples_for(theorem);
    let mut cells = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    for (ci, p) in grid.iter().enumerate() {
        let cell_seed = corpus::derive_seed(seed, &[ci as u64, p.n as u64, p.k as u64, p.delta as u64]);
        let ctx = checks::Ctx { p: *p, spec, samples, seed: cell_seed, dog: &dog };
        let out = checks::run(theorem, &ctx)?;
        violations.extend(out.violations);
        cells.push(out.summary);
    }
    let vacuous_cells = cells.iter().filter(|c| c.is_vacuous()).map(|c| c.params).collect();
    let empirical_notes = notes(theorem, &cells);
    Ok(VerificationReport {
        theorem,
        grid: grid.to_vec(),
        corpus_spec: CorpusSpec { samples, ..*spec },
        corpus_size: cells.iter().map(|c| c.corpus).sum(),
        violations,
        seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
        empirical_notes,
        vacuous_cells,
        cells,
        watchdog: dog.summary(),
    })
}

/// Claims check for one cell, as a report.
pub fn lemma42_claims_check(p: &FamilyParams, samples: usize, seed: u64) -> Result<VerificationReport> {
    verify(TheoremId::Lem42Claims, &[*p], &CorpusSpec::with_samples(samples), seed)
}

fn notes(theorem: TheoremId, cells: &[CellSummary]) -> String {
    let mut lines: Vec<String> = Vec::new();
    for c in cells {
        for note in &c.notes {
            lines.push(format!("{}: {note}", c.params));
        }
    }
    if theorem.is_asymptotic() {
        let mut groups: BTreeMap<(usize, usize), Vec<&CellSummary>> = BTreeMap::new();
        for c in cells {
            groups.entry((c.params.k, c.params.delta)).or_default().push(c);
        }
        for ((k, delta), mut cs) in groups {
            cs.sort_by_key(|c| c.params.n);
            let bad: Vec<usize> = cs.iter().filter(|c| c.violations > 0).map(|c| c.params.n).collect();
            let top = cs.last().expect("nonempty group").params.n;
            let line = match bad.last() {
                None => format!("k={k},delta={delta}: no violations at any tested n ({}..={top})", cs[0].params.n),
                Some(&last) if last == top => {
                    format!("k={k},delta={delta}: violations persist at the largest tested n={top} (violating n: {bad:?})")
                }
                Some(&last) => {
                    let from = cs.iter().map(|c| c.params.n).find(|&n| n > last).expect("a larger n");
                    format!("k={k},delta={delta}: violation-free from n={from} up to n={top} (violating n: {bad:?})")
                }
            };
            lines.push(line);
        }
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests;
