use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// An unordered vertex pair, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[inline]
pub(crate) fn normalize((a, b): Edge) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A perfect matching of `{0, .., order - 1}` in canonical form: pairs
/// `(a, b)` with `a < b`, sorted by `a`.
///
/// Two matchings are equal iff their canonical pair lists are equal, which
/// makes the type directly usable in hash sets of visited matchings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    pairs: Vec<Edge>,
    #[doc(hidden)]
    mate: Vec<usize>,
}

impl PerfectMatching {
    /// Validates and canonicalizes a list of pairs.
    pub fn new(order: usize, pairs: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if !order.is_multiple_of(2) {
            return Err(Error::InvalidMatching(format!("odd order {order}")));
        }
        let mut mate = vec![usize::MAX; order];
        let mut list = Vec::with_capacity(order / 2);
        for (u, v) in pairs {
            if u == v || u >= order || v >= order {
                return Err(Error::InvalidMatching(format!(
                    "pair ({u}, {v}) is not an edge of K_{order}"
                )));
            }
            for x in [u, v] {
                if mate[x] != usize::MAX {
                    return Err(Error::InvalidMatching(format!("vertex {x} is covered twice")));
                }
            }
            mate[u] = v;
            mate[v] = u;
            list.push(normalize((u, v)));
        }
        if let Some(x) = mate.iter().position(|&m| m == usize::MAX) {
            return Err(Error::InvalidMatching(format!("vertex {x} is not covered")));
        }
        list.sort_unstable();
        Ok(PerfectMatching { pairs: list, mate })
    }

    /// Builds a matching from a mate array (`mate[mate[v]] == v`).
    pub fn from_mates(mate: Vec<usize>) -> Result<Self> {
        let order = mate.len();
        let mut pairs = Vec::with_capacity(order / 2);
        for (v, &w) in mate.iter().enumerate() {
            if w >= order || w == v || mate[w] != v {
                return Err(Error::InvalidMatching(format!("mate array inconsistent at {v}")));
            }
            if v < w {
                pairs.push((v, w));
            }
        }
        Ok(PerfectMatching { pairs, mate })
    }

    /// `{0 1, 2 3, ..}`.
    pub fn identity(order: usize) -> Self {
        assert!(order.is_multiple_of(2), "odd order {order}");
        Self::new(order, (0..order / 2).map(|i| (2 * i, 2 * i + 1))).expect("valid")
    }

    /// A uniformly random perfect matching: shuffle the vertices and pair
    /// consecutive entries.
    pub fn random<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Self {
        assert!(order.is_multiple_of(2), "odd order {order}");
        let mut vs: Vec<usize> = (0..order).collect();
        vs.shuffle(rng);
        Self::new(order, vs.chunks_exact(2).map(|c| (c[0], c[1]))).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.mate.len()
    }

    /// Number of edges, `order / 2`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Edge] {
        &self.pairs
    }

    #[inline]
    pub fn mate(&self, v: usize) -> usize {
        self.mate[v]
    }

    pub fn mates(&self) -> &[usize] {
        &self.mate
    }

    pub fn contains(&self, (u, v): Edge) -> bool {
        u < self.mate.len() && self.mate[u] == v
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("matching")?;
        for (a, b) in &self.pairs {
            write!(f, " {a}-{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
