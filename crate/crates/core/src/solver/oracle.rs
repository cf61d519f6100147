//! Exact minimum of `|sigma(M)|` over all perfect matchings, by depth-first
//! enumeration that always pairs the smallest unmatched vertex next.
//!
//! Partial matchings are pruned when no completion can beat the incumbent:
//! with partial weight `p` and `r` edges still to place, the final weight is
//! one of `p - r, p - r + 2, .., p + r`. Because subtrees are only cut when
//! they cannot be *strictly* better, and the enumeration runs in lexicographic
//! order, the witness is the lexicographically first minimizer.

use crate::error::{Error, Result};
use crate::graph::SignedCompleteGraph;
use crate::matching::{Edge, PerfectMatching};
use crate::Weight;

/// Default largest order the oracle accepts (`15!! = 2_027_025` matchings).
pub const DEFAULT_ORACLE_LIMIT: usize = 16;
/// Hard cap for an overridden limit (`19!! = 654_729_075` matchings).
pub const MAX_ORACLE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub min_abs_weight: Weight,
    /// Signed weight of the witness.
    pub weight: Weight,
    pub witness: PerfectMatching,
}

pub fn oracle_min_weight(g: &SignedCompleteGraph, order_limit: usize) -> Result<OracleResult> {
    check_limit(g.order(), order_limit)?;
    let order = g.order();
    let full: u32 = (1u32 << order) - 1;
    let mut s = Search {
        g,
        best: Weight::MAX,
        best_weight: 0,
        best_pairs: Vec::new(),
        stack: Vec::with_capacity(order / 2),
        floor: ((order / 2) % 2) as Weight,
    };
    s.rec(full, 0, (order / 2) as Weight);
    let witness = PerfectMatching::new(order, s.best_pairs).expect("enumerated matching");
    Ok(OracleResult {
        min_abs_weight: s.best,
        weight: s.best_weight,
        witness,
    })
}

/// Rejects orders above `order_limit`, and limits above [`MAX_ORACLE_LIMIT`].
pub fn check_limit(order: usize, order_limit: usize) -> Result<()> {
    if order_limit > MAX_ORACLE_LIMIT {
        return Err(Error::Parameter(format!(
            "oracle limit {order_limit} above the hard cap of {MAX_ORACLE_LIMIT}"
        )));
    }
    if order > order_limit {
        return Err(Error::OracleLimit {
            order,
            limit: order_limit,
        });
    }
    if order > DEFAULT_ORACLE_LIMIT {
        log::warn!(
            "oracle on order {order} enumerates up to {} matchings; this can take minutes",
            double_factorial(order as u64 - 1)
        );
    }
    Ok(())
}

/// `(2k - 1)!!`, the number of perfect matchings of `K_{2k}` when called
/// with `2k - 1`.
pub fn double_factorial(n: u64) -> u64 {
    (1..=n).rev().step_by(2).product()
}

/// Smallest `|w|` over `w in {p - r, p - r + 2, .., p + r}`.
#[inline]
fn reachable_min(p: Weight, r: Weight) -> Weight {
    let (lo, hi) = (p - r, p + r);
    if lo <= 0 && hi >= 0 {
        hi.rem_euclid(2)
    } else {
        lo.abs().min(hi.abs())
    }
}

struct Search<'a> {
    g: &'a SignedCompleteGraph,
    best: Weight,
    best_weight: Weight,
    best_pairs: Vec<Edge>,
    stack: Vec<Edge>,
    floor: Weight,
}

impl Search<'_> {
    /// Returns `true` once the parity floor is reached; nothing can beat it.
    fn rec(&mut self, free: u32, partial: Weight, remaining: Weight) -> bool {
        if free == 0 {
            if partial.abs() < self.best {
                self.best = partial.abs();
                self.best_weight = partial;
                self.best_pairs.clone_from(&self.stack);
            }
            return self.best == self.floor;
        }
        if reachable_min(partial, remaining) >= self.best {
            return false;
        }
        let a = free.trailing_zeros() as usize;
        let rest = free & !(1 << a);
        let mut cand = rest;
        while cand != 0 {
            let b = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.stack.push((a, b));
            let stop = self.rec(rest & !(1 << b), partial + self.g.value_fast(a, b), remaining - 1);
            self.stack.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Calls `f` with the canonical pair list of every perfect matching of
/// `K_order`, in lexicographic order.
///
/// Meant for small orders (tests and exhaustive checks); there are
/// `(order - 1)!!` calls.
pub fn for_each_perfect_matching(order: usize, mut f: impl FnMut(&[Edge])) {
    fn rec(free: u64, stack: &mut Vec<Edge>, f: &mut dyn FnMut(&[Edge])) {
        if free == 0 {
            f(stack);
            return;
        }
        let a = free.trailing_zeros() as usize;
        let rest = free & !(1 << a);
        let mut cand = rest;
        while cand != 0 {
            let b = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            stack.push((a, b));
            rec(rest & !(1 << b), stack, f);
            stack.pop();
        }
    }
    assert!(order.is_multiple_of(2) && order < 64, "unsupported order {order}");
    rec((1u64 << order) - 1, &mut Vec::with_capacity(order / 2), &mut f);
}
