//! Minimum-`|sigma(M)|` perfect matchings: exchange local search, the exact
//! oracle, and maximum matchings of sign subgraphs.

pub mod blossom;
pub mod exchange;
pub mod oracle;
pub mod search;

use crate::graph::{Sign, SignedCompleteGraph};
use crate::matching::{Edge, PerfectMatching};

/// A maximum matching of the subgraph formed by the edges labeled `sign`.
/// Its size is that subgraph's matching number.
pub fn max_matching(g: &SignedCompleteGraph, sign: Sign) -> Vec<Edge> {
    g.sign_subgraph(sign).maximum_matching()
}

/// Extends a maximum matching of the `sign` subgraph to a perfect matching
/// of the complete graph by pairing the uncovered vertices in ascending
/// order.
///
/// The uncovered vertices are independent in the `sign` subgraph (otherwise
/// the matching could be extended), so every added edge carries the opposite
/// sign. With `nu` the matching number, the result weighs
/// `order / 2 - 2 nu` for `Sign::Minus` and `2 nu - order / 2` for `Sign::Plus`.
pub fn pm_from_sign_max_matching(g: &SignedCompleteGraph, sign: Sign) -> PerfectMatching {
    let base = max_matching(g, sign);
    let mut covered = vec![false; g.order()];
    for &(a, b) in &base {
        covered[a] = true;
        covered[b] = true;
    }
    let rest: Vec<usize> = (0..g.order()).filter(|&v| !covered[v]).collect();
    debug_assert!(rest
        .iter()
        .enumerate()
        .all(|(i, &u)| rest[i + 1..].iter().all(|&v| g.sign(u, v) != sign)));
    let pairs = base
        .into_iter()
        .chain(rest.chunks_exact(2).map(|c| (c[0], c[1])));
    PerfectMatching::new(g.order(), pairs).expect("maximum matching plus pairing is perfect")
}
