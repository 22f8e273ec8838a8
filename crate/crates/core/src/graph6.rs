//! graph6 encoding as used by nauty and the House of Graphs.

use std::io::{BufRead, Write};

use crate::bits::MAX_ORDER;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    // Upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    let mut acc = 0u8;
    let mut len = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            len += 1;
            if len == 6 {
                out.push(63 + acc);
                acc = 0;
                len = 0;
            }
        }
    }
    if len > 0 {
        out.push(63 + (acc << (6 - len)));
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn decode(line: &str) -> Result<Graph> {
    let bad = |why: &str| Error::MalformedInput(format!("graph6 `{line}`: {why}"));
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty")),
        [b'~', b'~', ..] => {
            if bytes.len() < 8 {
                return Err(bad("truncated size"));
            }
            let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[8..])
        }
        [b'~', ..] => {
            if bytes.len() < 4 {
                return Err(bad("truncated size"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(bad("body length does not match order"));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[idx / 6] - 63;
            if byte & (1 << (5 - idx % 6)) != 0 {
                g.add_edge(u, v);
            }
            idx += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        if last & ((1 << (6 - pairs % 6)) - 1) != 0 {
            return Err(bad("non-zero padding bits"));
        }
    }
    Ok(g)
}

/// Reads one graph per line, skipping blank lines, `#` comment lines and
/// an optional `>>graph6<<` header.
pub fn read_all<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(decode(line)?);
    }
    Ok(out)
}

pub fn write_all<'a, W: Write, I: IntoIterator<Item = &'a Graph>>(mut w: W, graphs: I) -> Result<()> {
    for g in graphs {
        writeln!(w, "{}", encode(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::empty(5)), "D??");
        assert_eq!(encode(&Graph::complete(2)), "A_");
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        // petgraph's test vector: A-C, A-E, B-D, D-E.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&Graph::petersen()), "IheA@GUAo");
    }

    #[test]
    fn large_header() {
        let g = Graph::cycle(63);
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert!(matches!(decode(""), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("D?"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("D? "), Err(Error::MalformedInput(_))));
        // Padding bit set: n = 2 has one pair, five padding bits.
        assert!(matches!(decode("A`"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("~??~"), Err(Error::MalformedInput(_)) | Err(Error::OrderTooLarge(_))));
    }

    #[test]
    fn order_too_large() {
        // n = 200 header, body omitted: order check fires first.
        let mut s = String::from("~");
        for shift in [12, 6, 0] {
            s.push((63 + ((200usize >> shift) & 63)) as u8 as char);
        }
        assert!(matches!(decode(&s), Err(Error::OrderTooLarge(200))));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut i = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[i] {
                            g.add_edge(u, v);
                        }
                        i += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(g in arb_graph(32)) {
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
