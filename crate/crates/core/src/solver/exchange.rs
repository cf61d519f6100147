//! Exchanges: replace `r` edges of a perfect matching by a different perfect
//! matching on the same `2r` vertices.
//!
//! The symmetric difference of the old and new matchings is a union of
//! alternating cycles of total length `2r`. With `r <= 4` this covers the
//! 4-cycle swaps between two matching edges, the 6-cycle moves over three
//! edges and the moves over four edges (either one 8-cycle or two 4-cycles).

use std::sync::OnceLock;

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::graph::SignedCompleteGraph;
use crate::matching::{normalize, Edge, PerfectMatching};
use crate::Weight;

/// Largest supported exchange size.
pub const MAX_EXCHANGE: usize = 4;

pub type EdgeSet = ArrayVec<Edge, MAX_EXCHANGE>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exchange {
    removed: EdgeSet,
    added: EdgeSet,
    delta: Weight,
}

impl Exchange {
    /// Validates an exchange against the current matching `m`: `removed` must
    /// be `r` distinct edges of `m` (`2 <= r <= 4`), and `added` a perfect
    /// matching of the same vertices sharing no edge with `removed`.
    pub fn new(
        g: &SignedCompleteGraph,
        m: &PerfectMatching,
        removed: &[Edge],
        added: &[Edge],
    ) -> Result<Exchange> {
        let r = removed.len();
        if !(2..=MAX_EXCHANGE).contains(&r) || added.len() != r {
            return Err(Error::InvalidExchange(format!(
                "exchange must replace between 2 and {MAX_EXCHANGE} edges by as many, got {} -> {}",
                r,
                added.len()
            )));
        }
        let mut removed: EdgeSet = removed.iter().copied().map(normalize).collect();
        let mut added: EdgeSet = added.iter().copied().map(normalize).collect();
        removed.sort_unstable();
        added.sort_unstable();
        for &e in &removed {
            if !m.contains(e) {
                return Err(Error::InvalidExchange(format!("edge {e:?} is not in the matching")));
            }
        }
        if removed.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidExchange("removed edges repeat".into()));
        }
        let mut removed_vs: ArrayVec<usize, 8> = removed.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut added_vs: ArrayVec<usize, 8> = added.iter().flat_map(|&(a, b)| [a, b]).collect();
        removed_vs.sort_unstable();
        added_vs.sort_unstable();
        if removed_vs != added_vs || added_vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidExchange(
                "added edges must pair exactly the removed vertices".into(),
            ));
        }
        if added.iter().any(|e| removed.contains(e)) {
            return Err(Error::InvalidExchange("added edges reuse a removed edge".into()));
        }
        let delta = g.sigma_edges(&added) - g.sigma_edges(&removed);
        Ok(Exchange {
            removed,
            added,
            delta,
        })
    }

    pub fn removed(&self) -> &[Edge] {
        &self.removed
    }

    pub fn added(&self) -> &[Edge] {
        &self.added
    }

    /// `sigma(added) - sigma(removed)`.
    pub fn delta(&self) -> Weight {
        self.delta
    }

    /// Number of matching edges touched.
    pub fn size(&self) -> usize {
        self.removed.len()
    }

    /// The exchange that undoes `self`.
    pub fn reversed(&self) -> Exchange {
        Exchange {
            removed: self.added.clone(),
            added: self.removed.clone(),
            delta: -self.delta,
        }
    }
}

/// Returns `m` with `x.removed` replaced by `x.added`.
pub fn apply_exchange(m: &PerfectMatching, x: &Exchange) -> Result<PerfectMatching> {
    if let Some(e) = x.removed.iter().find(|&&e| !m.contains(e)) {
        return Err(Error::InvalidExchange(format!("edge {e:?} is not in the matching")));
    }
    Ok(apply_unchecked(m, x))
}

pub(crate) fn apply_unchecked(m: &PerfectMatching, x: &Exchange) -> PerfectMatching {
    let mut mate = m.mates().to_vec();
    for &(a, b) in &x.added {
        mate[a] = b;
        mate[b] = a;
    }
    PerfectMatching::from_mates(mate).expect("exchange preserves perfection")
}

/// Slot pairs of one pairing template.
pub type Template = ArrayVec<(u8, u8), MAX_EXCHANGE>;

/// Pairings of local slots `0..2r` that avoid every slot pair `(2i, 2i + 1)`,
/// in lexicographic order (each pairing listed as slot pairs with the
/// smaller slot first, sorted).
pub fn pairing_templates(r: usize) -> &'static [Template] {
    static TABLES: OnceLock<[Vec<Template>; MAX_EXCHANGE + 1]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| std::array::from_fn(build_templates));
    assert!(r <= MAX_EXCHANGE, "exchange size {r} above {MAX_EXCHANGE}");
    &tables[r]
}

fn build_templates(r: usize) -> Vec<Template> {
    fn rec(
        free: u32,
        cur: &mut Template,
        out: &mut Vec<Template>,
    ) {
        if free == 0 {
            out.push(cur.clone());
            return;
        }
        let a = free.trailing_zeros();
        let mut rest = free & !(1 << a);
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            // (2i, 2i+1) is a removed edge.
            if a.is_multiple_of(2) && b == a + 1 {
                continue;
            }
            cur.push((a as u8, b as u8));
            rec(free & !(1 << a) & !(1 << b), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 {
        rec((1u32 << (2 * r)) - 1, &mut ArrayVec::new(), &mut out);
    }
    out
}

/// Iterator over every exchange of size `r` on `m`, in lexicographic order:
/// `r`-subsets of the canonical pair list first, then pairing templates.
pub struct Exchanges<'a> {
    g: &'a SignedCompleteGraph,
    m: &'a PerfectMatching,
    templates: &'static [Template],
    combo: ArrayVec<usize, MAX_EXCHANGE>,
    slots: ArrayVec<usize, 8>,
    removed_weight: Weight,
    next_template: usize,
    done: bool,
}

/// Every exchange of size `r` (2, 3 or 4) on `m`.
///
/// For each `r`-subset of matching edges there are 2, 8 or 60 alternatives
/// (the pairings of `2r` points avoiding the `r` removed pairs).
pub fn enumerate_exchanges<'a>(
    g: &'a SignedCompleteGraph,
    m: &'a PerfectMatching,
    r: usize,
) -> Exchanges<'a> {
    assert!(
        (2..=MAX_EXCHANGE).contains(&r),
        "exchange size must be in 2..={MAX_EXCHANGE}, got {r}"
    );
    let done = r > m.len();
    let mut it = Exchanges {
        g,
        m,
        templates: pairing_templates(r),
        combo: (0..r.min(m.len())).collect(),
        slots: ArrayVec::new(),
        removed_weight: 0,
        next_template: 0,
        done,
    };
    if !it.done {
        it.load_combo();
    }
    it
}

impl Exchanges<'_> {
    fn load_combo(&mut self) {
        self.slots.clear();
        self.removed_weight = 0;
        for &i in &self.combo {
            let (a, b) = self.m.pairs()[i];
            self.slots.push(a);
            self.slots.push(b);
            self.removed_weight += self.g.value_fast(a, b);
        }
        self.next_template = 0;
    }

    fn advance_combo(&mut self) -> bool {
        let r = self.combo.len();
        let n = self.m.len();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - r + i {
                self.combo[i] += 1;
                for j in i + 1..r {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Exchanges<'_> {
    type Item = Exchange;

    fn next(&mut self) -> Option<Exchange> {
        if self.done {
            return None;
        }
        if self.next_template == self.templates.len() {
            if !self.advance_combo() {
                self.done = true;
                return None;
            }
            self.load_combo();
        }
        let t = &self.templates[self.next_template];
        self.next_template += 1;

        let mut added: EdgeSet = t
            .iter()
            .map(|&(i, j)| normalize((self.slots[i as usize], self.slots[j as usize])))
            .collect();
        added.sort_unstable();
        let added_weight: Weight = added.iter().map(|&(a, b)| self.g.value_fast(a, b)).sum();
        let removed = self.combo.iter().map(|&i| self.m.pairs()[i]).collect();
        Some(Exchange {
            removed,
            added,
            delta: added_weight - self.removed_weight,
        })
    }
}
