//! The `signed-k` instance text format and the one-line matching format.
//!
//! ```text
//! signed-k 1
//! order 4
//! signs ++-+-+
//! ```
//!
//! Signs are listed in canonical pair order (see
//! [`canonical_pair_index`](crate::canonical_pair_index)). Whitespace inside
//! the sign block is ignored, so long sign strings may be wrapped.
//!
//! Matchings are written as `matching 0-1 2-3 ..` with canonical pairs.

use crate::error::{Error, Result};
use crate::graph::{choose2, Sign, SignedCompleteGraph};
use crate::matching::PerfectMatching;

pub const MAGIC: &str = "signed-k";
pub const VERSION: u32 = 1;

/// Renders `g` in the `signed-k 1` format, newline-terminated.
pub fn serialize_instance(g: &SignedCompleteGraph) -> String {
    let mut out = String::with_capacity(g.edge_count() + 32);
    out.push_str(MAGIC);
    out.push(' ');
    out.push_str(&VERSION.to_string());
    out.push('\n');
    out.push_str(&format!("order {}\n", g.order()));
    out.push_str("signs ");
    out.extend(g.signs().iter().map(|s| s.as_char()));
    out.push('\n');
    out
}

pub fn parse_instance(text: &str) -> Result<SignedCompleteGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input, expected `signed-k 1`"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some(MAGIC) {
        return Err(Error::parse(ln, 1, format!("bad header, expected `{MAGIC} {VERSION}`")));
    }
    match words.next().map(str::parse::<u32>) {
        Some(Ok(VERSION)) => {}
        Some(Ok(v)) => {
            return Err(Error::parse(ln, MAGIC.len() + 2, format!("unsupported version {v}")))
        }
        _ => return Err(Error::parse(ln, MAGIC.len() + 2, "missing or malformed version")),
    }
    if words.next().is_some() {
        return Err(Error::parse(ln, header.len(), "trailing data after header"));
    }

    let (ln, order_line) = lines
        .next()
        .ok_or_else(|| Error::parse(ln + 1, 1, "missing `order <N>` line"))?;
    let order = parse_order_line(ln, order_line)?;

    let (ln, signs_line) = lines
        .next()
        .ok_or_else(|| Error::parse(ln + 1, 1, "missing `signs` line"))?;
    let body = signs_line
        .trim_start()
        .strip_prefix("signs")
        .ok_or_else(|| Error::parse(ln, 1, "expected `signs <+/- string>`"))?;
    let body_col = signs_line.len() - body.len() + 1;

    let expected = choose2(order);
    let mut signs = Vec::with_capacity(expected);
    let chunks = std::iter::once((ln, body_col, body))
        .chain(lines.map(|(l, text)| (l, 1, text)));
    let mut last_pos = (ln, signs_line.len() + 1);
    for (line, col0, chunk) in chunks {
        for (off, c) in chunk.char_indices() {
            let col = col0 + off;
            match c {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                c if c.is_whitespace() => continue,
                c => {
                    return Err(Error::parse(line, col, format!("illegal character {c:?} in sign block")))
                }
            }
            last_pos = (line, col + 1);
        }
    }
    if signs.len() != expected {
        return Err(Error::parse(
            last_pos.0,
            last_pos.1,
            format!(
                "sign block has length {}, order {order} needs C({order},2) = {expected}",
                signs.len()
            ),
        ));
    }
    SignedCompleteGraph::from_signs(order, signs)
        .map_err(|e| Error::parse(2, 1, e.to_string()))
}

fn parse_order_line(ln: usize, line: &str) -> Result<usize> {
    let mut words = line.split_whitespace();
    if words.next() != Some("order") {
        return Err(Error::parse(ln, 1, "expected `order <N>`"));
    }
    let value = words
        .next()
        .ok_or_else(|| Error::parse(ln, line.len() + 1, "missing order value"))?;
    let col = line.find(value).map_or(1, |i| i + 1);
    let order: usize = value
        .parse()
        .map_err(|_| Error::parse(ln, col, format!("order `{value}` is not a non-negative integer")))?;
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::parse(ln, col, format!("order {order} must be even and at least 2")));
    }
    if words.next().is_some() {
        return Err(Error::parse(ln, line.len(), "trailing data after order"));
    }
    Ok(order)
}

pub fn serialize_matching(m: &PerfectMatching) -> String {
    m.to_string()
}

/// Parses `matching a0-b0 a1-b1 ..`. The order is taken to be twice the
/// number of pairs.
pub fn parse_matching(text: &str) -> Result<PerfectMatching> {
    let line = text.trim();
    let mut words = line.split_whitespace();
    if words.next() != Some("matching") {
        return Err(Error::parse(1, 1, "expected `matching a-b ..`"));
    }
    let mut pairs = Vec::new();
    for w in words {
        let col = line.find(w).map_or(1, |i| i + 1);
        let (a, b) = w
            .split_once('-')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| Error::parse(1, col, format!("malformed pair `{w}`")))?;
        pairs.push((a, b));
    }
    PerfectMatching::new(2 * pairs.len(), pairs).map_err(|e| Error::parse(1, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn parses_direct_encoding() {
        let g = parse_instance("signed-k 1\norder 4\nsigns ++-+-+\n").unwrap();
        assert_eq!(g.order(), 4);
        let want = [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus, Sign::Plus];
        assert_eq!(g.signs(), &want);
        assert_eq!(g.sign(0, 3), Sign::Minus);
        assert_eq!(g.sign(2, 3), Sign::Plus);
    }

    #[test]
    fn sign_block_ignores_whitespace() {
        let g = parse_instance("signed-k 1\norder 4\nsigns ++ -+\n  -+\n").unwrap();
        assert_eq!(serialize_instance(&g), "signed-k 1\norder 4\nsigns ++-+-+\n");
    }

    #[test]
    fn wrong_length_is_an_error() {
        let text = format!("signed-k 1\norder 8\nsigns {}\n", "+".repeat(27));
        match parse_instance(&text) {
            Err(Error::Parse { line: 3, message, .. }) => assert!(message.contains("28")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_instance("signed-x 1\norder 4\nsigns ++++++"),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            parse_instance("signed-k 2\norder 4\nsigns ++++++"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("signed-k 1\norder 5\nsigns ++++++"),
            Err(Error::Parse { line: 2, column: 7, .. })
        ));
        assert!(matches!(
            parse_instance("signed-k 1\norder 4\nsigns ++x+++"),
            Err(Error::Parse { line: 3, column: 9, .. })
        ));
        assert!(matches!(
            parse_instance("signed-k 1\norder 4\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn matching_format() {
        let m = parse_matching("matching 0-3 1-2\n").unwrap();
        assert_eq!(serialize_matching(&m), "matching 0-3 1-2");
        assert!(parse_matching("matching 0-3 1+2").is_err());
        assert!(parse_matching("matching 0-1 1-2").is_err());
        assert!(parse_matching("pairs 0-1").is_err());
    }

    proptest! {
        #[test]
        fn instance_round_trip(half in 1usize..10, seed: u64) {
            let order = 2 * half;
            let mut rng = seeded(seed);
            let g = SignedCompleteGraph::from_fn(order, |_, _| {
                if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus }
            }).unwrap();
            let back = parse_instance(&serialize_instance(&g)).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn matching_round_trip(half in 1usize..12, seed: u64) {
            let m = PerfectMatching::random(2 * half, &mut seeded(seed));
            prop_assert_eq!(parse_matching(&serialize_matching(&m)).unwrap(), m);
        }
    }
}
