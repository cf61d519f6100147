//! Exchange local search for a perfect matching of small `|sigma(M)|`.
//!
//! From a start matching the search repeatedly applies an exchange that
//! lowers `|sigma|`, trying sizes 2, then 3, then 4. At a local optimum it
//! may walk the plateau through weight-preserving ("sideways") exchanges,
//! never revisiting a matching, until an improving exchange reappears or the
//! sideways budget runs out. Then it restarts from a fresh seeded random
//! matching. A run stops early once the parity floor
//! (`(order / 2) mod 2`) is reached, since nothing can beat it.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use super::exchange::{apply_unchecked, enumerate_exchanges, Exchange, MAX_EXCHANGE};
use crate::error::{Error, Result};
use crate::graph::SignedCompleteGraph;
use crate::matching::PerfectMatching;
use crate::rng::seeded;
use crate::Weight;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Improvement {
    /// Take the first improving exchange in lexicographic order.
    #[default]
    First,
    /// Take the exchange with the smallest resulting `|sigma|` among the
    /// current size; ties go to the lexicographically first.
    Best,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Start {
    #[default]
    Random,
    Given(PerfectMatching),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchPolicy {
    pub start: Start,
    pub improvement: Improvement,
    /// Largest exchange size tried, in `2..=4`.
    pub max_exchange: usize,
    /// Sideways moves allowed per descent before restarting.
    pub sideways_budget: usize,
    /// Random restarts after the first descent.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            start: Start::Random,
            improvement: Improvement::First,
            max_exchange: MAX_EXCHANGE,
            sideways_budget: 256,
            restarts: 8,
            seed: 0,
        }
    }
}

impl SearchPolicy {
    pub fn with_seed(seed: u64) -> Self {
        SearchPolicy {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub initial_weight: Weight,
    pub final_weight: Weight,
    /// Improving moves applied, indexed by exchange size 2, 3, 4.
    pub moves_applied: [usize; 3],
    pub sideways_moves: usize,
    pub restarts: usize,
    /// The returned matching admits no improving exchange of size
    /// `<= max_exchange`.
    pub converged: bool,
    /// All restarts were used without reaching the parity floor; the result
    /// is the best matching found.
    pub budget_exhausted: bool,
    pub oracle_checked: bool,
    pub oracle_weight: Option<Weight>,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl SolveReport {
    pub fn total_moves(&self) -> usize {
        self.moves_applied.iter().sum()
    }

    /// Records the exact minimum for comparison.
    pub fn attach_oracle(&mut self, min_abs_weight: Weight) {
        self.oracle_checked = true;
        self.oracle_weight = Some(min_abs_weight);
    }

    /// `Some(true)` when the solver reached the oracle's minimum.
    pub fn agrees_with_oracle(&self) -> Option<bool> {
        self.oracle_weight.map(|w| w == self.final_weight.abs())
    }
}

pub fn local_search_min_weight(
    g: &SignedCompleteGraph,
    policy: &SearchPolicy,
) -> Result<(PerfectMatching, SolveReport)> {
    let t0 = Instant::now();
    let order = g.order();
    if order < 4 {
        return Err(Error::InvalidOrder {
            order,
            reason: "local search needs order at least 4",
        });
    }
    if !(2..=MAX_EXCHANGE).contains(&policy.max_exchange) {
        return Err(Error::Parameter(format!(
            "max exchange size must be in 2..={MAX_EXCHANGE}, got {}",
            policy.max_exchange
        )));
    }
    let mut rng = seeded(policy.seed);
    let start = match &policy.start {
        Start::Given(m) if m.order() != order => {
            return Err(Error::InvalidMatching(format!(
                "start matching has order {}, graph has order {order}",
                m.order()
            )))
        }
        Start::Given(m) => m.clone(),
        Start::Random => PerfectMatching::random(order, &mut rng),
    };
    let floor = ((order / 2) % 2) as Weight;

    let mut report = SolveReport {
        initial_weight: g.sigma_matching(&start),
        ..SolveReport::default()
    };
    let mut best: Option<(PerfectMatching, Weight)> = None;
    let mut next = Some(start);
    for attempt in 0..=policy.restarts {
        let m0 = match next.take() {
            Some(m) => m,
            None => PerfectMatching::random(order, &mut rng),
        };
        if attempt > 0 {
            report.restarts += 1;
        }
        let (m, w) = descend(g, m0, policy, floor, &mut report);
        if best.as_ref().is_none_or(|(_, bw)| w.abs() < bw.abs()) {
            best = Some((m, w));
        }
        if best.as_ref().is_some_and(|(_, bw)| bw.abs() == floor) {
            break;
        }
    }
    let (m, w) = best.expect("at least one descent");
    report.final_weight = w;
    report.converged = w.abs() == floor || find_improving_exchange(g, &m, policy.max_exchange, Improvement::First).is_none();
    report.budget_exhausted = w.abs() > floor;
    report.elapsed = t0.elapsed();
    Ok((m, report))
}

fn descend(
    g: &SignedCompleteGraph,
    mut m: PerfectMatching,
    policy: &SearchPolicy,
    floor: Weight,
    report: &mut SolveReport,
) -> (PerfectMatching, Weight) {
    let mut w = g.sigma_matching(&m);
    let mut visited: HashSet<PerfectMatching> = HashSet::new();
    visited.insert(m.clone());
    let mut sideways_left = policy.sideways_budget;
    while w.abs() > floor {
        if let Some(x) = improving_from(g, &m, w, policy.max_exchange, policy.improvement) {
            m = apply_unchecked(&m, &x);
            w += x.delta();
            report.moves_applied[x.size() - 2] += 1;
            visited.insert(m.clone());
            continue;
        }
        if sideways_left == 0 {
            break;
        }
        match sideways_from(g, &m, w, policy.max_exchange, &visited) {
            Some((x, n)) => {
                m = n;
                w += x.delta();
                sideways_left -= 1;
                report.sideways_moves += 1;
                visited.insert(m.clone());
            }
            None => break,
        }
    }
    (m, w)
}

fn improving_from(
    g: &SignedCompleteGraph,
    m: &PerfectMatching,
    w: Weight,
    max_exchange: usize,
    rule: Improvement,
) -> Option<Exchange> {
    for r in 2..=max_exchange.min(m.len()) {
        let mut xs = enumerate_exchanges(g, m, r).filter(|x| (w + x.delta()).abs() < w.abs());
        let found = match rule {
            Improvement::First => xs.next(),
            // min_by_key keeps the first of equal keys.
            Improvement::Best => xs.min_by_key(|x| (w + x.delta()).abs()),
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn sideways_from(
    g: &SignedCompleteGraph,
    m: &PerfectMatching,
    w: Weight,
    max_exchange: usize,
    visited: &HashSet<PerfectMatching>,
) -> Option<(Exchange, PerfectMatching)> {
    (2..=max_exchange.min(m.len())).find_map(|r| {
        enumerate_exchanges(g, m, r)
            .filter(|x| (w + x.delta()).abs() == w.abs())
            .find_map(|x| {
                let n = apply_unchecked(m, &x);
                (!visited.contains(&n)).then_some((x, n))
            })
    })
}

/// An exchange of size `<= max_exchange` that lowers `|sigma(m)|`, if any.
pub fn find_improving_exchange(
    g: &SignedCompleteGraph,
    m: &PerfectMatching,
    max_exchange: usize,
    rule: Improvement,
) -> Option<Exchange> {
    improving_from(g, m, g.sigma_matching(m), max_exchange, rule)
}

/// Exhaustive rescan: no exchange of size `<= max_exchange` lowers
/// `|sigma(m)|`.
pub fn is_local_optimum(g: &SignedCompleteGraph, m: &PerfectMatching, max_exchange: usize) -> bool {
    find_improving_exchange(g, m, max_exchange, Improvement::First).is_none()
}
