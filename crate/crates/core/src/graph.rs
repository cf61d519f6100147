//! Complete graphs with a sign on every edge.

use std::fmt;

use crate::error::{Error, Result};
use crate::matching::{Edge, PerfectMatching};
use crate::solver::blossom::SimpleGraph;
use crate::Weight;

/// Label of a single edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    #[inline]
    pub const fn value(self) -> Weight {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }

    #[inline]
    pub const fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }

    pub fn from_value(value: i64) -> Option<Sign> {
        match value {
            -1 => Some(Sign::Minus),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Number of unordered pairs in a set of `order` elements.
#[inline]
pub const fn choose2(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// Position of the unordered pair `{u, v}` in the row-major upper triangle of
/// an `order x order` matrix:
///
/// `index = u * order - u * (u + 1) / 2 + (v - u - 1)` for `u < v`.
///
/// The pair may be passed in either order.
pub fn canonical_pair_index(u: usize, v: usize, order: usize) -> Result<usize> {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    if a == b || b >= order {
        return Err(Error::InvalidPair { u, v, order });
    }
    Ok(pair_index_unchecked(a, b, order))
}

#[inline]
pub(crate) const fn pair_index_unchecked(a: usize, b: usize, order: usize) -> usize {
    a * order - a * (a + 1) / 2 + (b - a - 1)
}

/// All pairs `(u, v)` with `u < v < order`, in canonical index order.
pub fn pairs(order: usize) -> impl Iterator<Item = Edge> {
    (0..order).flat_map(move |u| (u + 1..order).map(move |v| (u, v)))
}

/// A complete graph on `{0, .., order - 1}` with a sign on each edge.
///
/// Immutable after construction. Besides the flat canonical sign vector, a
/// dense `order x order` value table is kept for O(1) symmetric lookups in the
/// solver's inner loops.
#[derive(Clone, PartialEq, Eq)]
pub struct SignedCompleteGraph {
    order: usize,
    signs: Vec<Sign>,
    plus_count: usize,
    table: Vec<i8>,
}

impl SignedCompleteGraph {
    /// Builds a graph from signs listed in canonical pair order.
    pub fn from_signs(order: usize, signs: Vec<Sign>) -> Result<Self> {
        check_order(order)?;
        let expected = choose2(order);
        if signs.len() != expected {
            return Err(Error::SignCount {
                order,
                expected,
                got: signs.len(),
            });
        }
        let mut table = vec![0i8; order * order];
        let mut plus_count = 0;
        for ((u, v), &s) in pairs(order).zip(signs.iter()) {
            let val = s.value() as i8;
            table[u * order + v] = val;
            table[v * order + u] = val;
            if s == Sign::Plus {
                plus_count += 1;
            }
        }
        Ok(SignedCompleteGraph {
            order,
            signs,
            plus_count,
            table,
        })
    }

    /// Builds a graph by evaluating `sign(u, v)` for every pair `u < v`.
    pub fn from_fn(order: usize, mut sign: impl FnMut(usize, usize) -> Sign) -> Result<Self> {
        check_order(order)?;
        let signs = pairs(order).map(|(u, v)| sign(u, v)).collect();
        Self::from_signs(order, signs)
    }

    /// The graph with every edge labeled `sign`.
    pub fn uniform(order: usize, sign: Sign) -> Result<Self> {
        Self::from_fn(order, |_, _| sign)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Signs in canonical pair order.
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn edge_count(&self) -> usize {
        self.signs.len()
    }

    pub fn plus_count(&self) -> usize {
        self.plus_count
    }

    pub fn minus_count(&self) -> usize {
        self.signs.len() - self.plus_count
    }

    /// Sign of the edge `{u, v}`.
    ///
    /// # Panics
    ///
    /// If `u == v` or either vertex is out of range.
    #[inline]
    pub fn sign(&self, u: usize, v: usize) -> Sign {
        if self.value(u, v) > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `sigma({u, v})` as an integer.
    #[inline]
    pub fn value(&self, u: usize, v: usize) -> Weight {
        assert!(u != v && u < self.order && v < self.order, "invalid pair ({u}, {v})");
        self.table[u * self.order + v] as Weight
    }

    /// Same as [`value`](Self::value) without the bounds assertion; callers
    /// guarantee `u != v < order`.
    #[inline]
    pub(crate) fn value_fast(&self, u: usize, v: usize) -> Weight {
        debug_assert!(u != v && u < self.order && v < self.order);
        self.table[u * self.order + v] as Weight
    }

    /// Sum of all edge labels, `plus_count - minus_count`.
    pub fn sigma_total(&self) -> Weight {
        self.plus_count as Weight - self.minus_count() as Weight
    }

    /// Sum of the labels of the matching's edges.
    ///
    /// # Panics
    ///
    /// If the matching is on a different vertex set.
    pub fn sigma_matching(&self, m: &PerfectMatching) -> Weight {
        assert_eq!(m.order(), self.order, "matching order differs from graph order");
        self.sigma_edges(m.pairs())
    }

    pub fn sigma_edges<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Weight {
        edges.into_iter().map(|&(a, b)| self.value(a, b)).sum()
    }

    /// Splits the matching into its plus-edges and minus-edges.
    pub fn matching_split(&self, m: &PerfectMatching) -> (Vec<Edge>, Vec<Edge>) {
        assert_eq!(m.order(), self.order, "matching order differs from graph order");
        m.pairs()
            .iter()
            .partition(|&&(a, b)| self.sign(a, b) == Sign::Plus)
    }

    /// The graph on the same vertex set whose edges are exactly the edges
    /// carrying `sign`.
    pub fn sign_subgraph(&self, sign: Sign) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.order);
        for ((u, v), &s) in pairs(self.order).zip(&self.signs) {
            if s == sign {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The graph with every label flipped.
    pub fn negated(&self) -> SignedCompleteGraph {
        let signs = self.signs.iter().map(|s| s.flip()).collect();
        Self::from_signs(self.order, signs).expect("same shape")
    }
}

impl fmt::Debug for SignedCompleteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: String = self.signs.iter().map(|s| s.as_char()).collect();
        f.debug_struct("SignedCompleteGraph")
            .field("order", &self.order)
            .field("signs", &signs)
            .finish()
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder {
            order,
            reason: "order must be at least 2",
        });
    }
    if !order.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            order,
            reason: "order must be even",
        });
    }
    Ok(())
}
