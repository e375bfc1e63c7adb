//! graph6 encoding: one graph per line, 6 bits per printable byte.

use crate::error::{Error, Result};

use super::{Adjacency, Graph, MAX_ORDER};

/// Encodes `g` (the `~`-prefixed size form is used from order 63 on).
pub fn encode<G: Adjacency + ?Sized>(g: &G) -> String {
    let n = g.order();
    let mut out = String::with_capacity(2 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.is_adjacent(u, v) as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

/// Decodes a single graph6 string (an optional `>>graph6<<` header is accepted).
pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b:#04x} outside the graph6 range")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("empty string".into())),
        [b'~', b'~', ..] => return Err(Error::Parse("orders above 258047 are unsupported".into())),
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("truncated order field".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            what: "graph order",
            limit: MAX_ORDER as u64,
            requested: n as u64,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Parse(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            idx += 1;
        }
    }
    if nbits % 6 != 0 {
        let pad = 6 - nbits % 6;
        if (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse("non-zero padding bits".into()));
        }
    }
    Ok(g)
}
