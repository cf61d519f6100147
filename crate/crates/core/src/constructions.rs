//! Instance generators and closed-form bounds.
//!
//! Vertex placement is fixed: the plus-clique of [`clique_instance`] sits on
//! the lowest-numbered vertices, and in [`proposition2_instance`] the part
//! `A` comes before `B`.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{choose2, Sign, SignedCompleteGraph};
use crate::rng::seeded;
use crate::solver::blossom::SimpleGraph;
use crate::Weight;

/// Parameters `n, k` of the bound families; the host graph is `K_{4n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuery {
    pub n: u64,
    pub k: u64,
}

impl BoundQuery {
    /// Checks `n >= 1` and `min_k <= k <= n`.
    pub fn new(n: u64, k: u64, min_k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be a positive integer".into()));
        }
        if k < min_k {
            return Err(Error::Parameter(format!("k must be at least {min_k}, got {k}")));
        }
        Ok(BoundQuery { n, k })
    }

    pub fn order(&self) -> usize {
        (4 * self.n) as usize
    }

    fn require_k_at_most_n(self) -> Result<Self> {
        if self.k > self.n {
            return Err(Error::Parameter(format!(
                "k = {} exceeds n = {}: a clique of order 3n + k does not fit in K_4n",
                self.k, self.n
            )));
        }
        Ok(self)
    }
}

/// `|A| = (k^2 + k)/2 + 2` and `|B| = (k^2 - k)/2 + 2` for even `k >= 2`.
pub fn proposition2_parts(k: u64) -> Result<(usize, usize)> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("k must be a positive even integer, got {k}")));
    }
    let a = (k * k + k) / 2 + 2;
    let b = (k * k - k) / 2 + 2;
    Ok((a as usize, b as usize))
}

/// `K_{k^2 + 4}` with its vertex set split into `A` then `B`: edges between
/// the parts are plus, edges inside a part are minus. The imbalance is 2 and
/// no perfect matching has weight 0.
pub fn proposition2_instance(k: u64) -> Result<SignedCompleteGraph> {
    let (a, b) = proposition2_parts(k)?;
    SignedCompleteGraph::from_fn(a + b, |u, v| {
        if (u < a) != (v < a) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    })
}

/// `K_{4n}` whose plus-edges form a clique on vertices `0 .. 3n + k`; the
/// remaining `n - k` vertices see only minus-edges. Requires `1 <= k <= n`.
///
/// Every perfect matching has at most `n - k` minus-edges, so its weight is
/// at least `2k`, while the imbalance equals [`thm2_bound`]`(n, k)`.
pub fn clique_instance(n: u64, k: u64) -> Result<SignedCompleteGraph> {
    let q = BoundQuery::new(n, k, 1)?.require_k_at_most_n()?;
    let clique = (3 * q.n + q.k) as usize;
    SignedCompleteGraph::from_fn(q.order(), |u, v| {
        if u < clique && v < clique {
            Sign::Plus
        } else {
            Sign::Minus
        }
    })
}

/// `n(n - 1) + k(6n - 1) + k^2`: an imbalance strictly below this forces a
/// perfect matching of weight at most `2k - 2` in `K_{4n}` (for `k >= 2`).
pub fn thm2_bound(n: u64, k: u64) -> Weight {
    let (n, k) = (n as Weight, k as Weight);
    n * (n - 1) + k * (6 * n - 1) + k * k
}

/// Largest edge count of a graph of order `4n` with matching number `n - k`:
/// `C(4n, 2) - C(3n + k, 2)`. Requires `1 <= k <= n`.
pub fn eg_edge_bound(n: u64, k: u64) -> Result<u64> {
    let q = BoundQuery::new(n, k, 1)?.require_k_at_most_n()?;
    Ok((choose2(q.order()) - choose2((3 * q.n + q.k) as usize)) as u64)
}

/// The unique extremal graph: the complement of `K_{3n+k}` plus `n - k`
/// isolated vertices, with the clique on the lowest-numbered vertices. It is
/// the minus-subgraph of [`clique_instance`]`(n, k)`.
pub fn eg_extremal_graph(n: u64, k: u64) -> Result<SimpleGraph> {
    let q = BoundQuery::new(n, k, 1)?.require_k_at_most_n()?;
    let order = q.order();
    let clique = (3 * q.n + q.k) as usize;
    let mut g = SimpleGraph::new(order);
    for u in 0..order {
        for v in (u + 1).max(clique)..order {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// Checks `|s| <= C(order, 2)` and `s = C(order, 2) (mod 2)`.
pub fn check_imbalance(order: usize, s: Weight) -> Result<()> {
    let m = choose2(order) as Weight;
    if s.abs() > m {
        return Err(Error::Parameter(format!(
            "imbalance {s} exceeds the {m} edges of K_{order}"
        )));
    }
    if (s - m).rem_euclid(2) != 0 {
        return Err(Error::Parameter(format!(
            "imbalance {s} has the wrong parity: it must be congruent to C({order},2) = {m} mod 2"
        )));
    }
    Ok(())
}

/// `K_order` with exactly `(C(order, 2) + s) / 2` plus-edges, placed
/// uniformly at random by a generator seeded with `seed`.
pub fn random_with_imbalance(order: usize, s: Weight, seed: u64) -> Result<SignedCompleteGraph> {
    random_with_imbalance_from(order, s, &mut seeded(seed))
}

/// Same as [`random_with_imbalance`], drawing from `rng`.
pub fn random_with_imbalance_from<R: Rng + ?Sized>(
    order: usize,
    s: Weight,
    rng: &mut R,
) -> Result<SignedCompleteGraph> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            order,
            reason: "order must be even and at least 2",
        });
    }
    check_imbalance(order, s)?;
    let m = choose2(order);
    let plus = ((m as Weight + s) / 2) as usize;
    let mut signs = vec![Sign::Minus; m];
    for i in sample(rng, m, plus) {
        signs[i] = Sign::Plus;
    }
    SignedCompleteGraph::from_signs(order, signs)
}

/// A uniformly random simple graph on `order` vertices with exactly `edges`
/// edges.
pub fn random_graph<R: Rng + ?Sized>(order: usize, edges: usize, rng: &mut R) -> Result<SimpleGraph> {
    let m = choose2(order);
    if edges > m {
        return Err(Error::Parameter(format!("{edges} edges exceed C({order},2) = {m}")));
    }
    let all: Vec<(usize, usize)> = crate::graph::pairs(order).collect();
    let mut picked: Vec<usize> = sample(rng, m, edges).into_vec();
    picked.sort_unstable();
    Ok(SimpleGraph::from_edges(order, picked.into_iter().map(|i| all[i])))
}
