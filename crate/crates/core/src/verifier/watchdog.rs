//! Spectral-bound watchdog: every graph whose spectra a check computes is
//! also held against Hong's bound and the Feng–Yu bound.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::graph::{graph6, Adjacency};
use crate::spectral::{feng_yu_bound, hong_bound};

/// Absolute tolerance of both bounds.
pub const BOUND_TOLERANCE: f64 = 1e-8;

static GLOBAL_CHECKED: AtomicU64 = AtomicU64::new(0);
static GLOBAL_FAILED: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WatchdogSummary {
    pub checked: u64,
    pub failures: u64,
    /// graph6 and values of each failure, sorted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

/// Totals over every report built in this process so far.
pub fn global_watchdog() -> WatchdogSummary {
    WatchdogSummary {
        checked: GLOBAL_CHECKED.load(Ordering::Relaxed),
        failures: GLOBAL_FAILED.load(Ordering::Relaxed),
        examples: Vec::new(),
    }
}

/// Slack of both bounds: `(hong − λ, fengYu − q)`.
pub fn bound_margins<G: Adjacency + ?Sized>(g: &G, lambda: f64, q: f64) -> (f64, f64) {
    let (n, e) = (g.order(), g.size());
    let hong = hong_bound::<f64>(n, e, g.min_degree()).unwrap_or(f64::INFINITY);
    let fy = if n >= 2 { feng_yu_bound(n, e as f64).unwrap_or(f64::INFINITY) } else { f64::INFINITY };
    (hong - lambda, fy - q)
}

#[derive(Default)]
pub(crate) struct Watchdog {
    checked: AtomicU64,
    failed: AtomicU64,
    examples: Mutex<Vec<String>>,
}

impl Watchdog {
    pub fn observe<G: Adjacency + ?Sized>(&self, g: &G, lambda: f64, q: f64) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        GLOBAL_CHECKED.fetch_add(1, Ordering::Relaxed);
        let (a, b) = bound_margins(g, lambda, q);
        if a < -BOUND_TOLERANCE || b < -BOUND_TOLERANCE {
            self.failed.fetch_add(1, Ordering::Relaxed);
            GLOBAL_FAILED.fetch_add(1, Ordering::Relaxed);
            let line = format!("{} lambda={lambda:.12} q={q:.12} hongSlack={a:.3e} fengYuSlack={b:.3e}", graph6::encode(g));
            self.examples.lock().expect("watchdog lock").push(line);
        }
    }

    pub fn summary(&self) -> WatchdogSummary {
        let mut examples = self.examples.lock().expect("watchdog lock").clone();
        examples.sort();
        WatchdogSummary {
            checked: self.checked.load(Ordering::Relaxed),
            failures: self.failed.load(Ordering::Relaxed),
            examples,
        }
    }
}
