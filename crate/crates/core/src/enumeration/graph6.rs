//! graph6 reader and writer for slim graphs.
//!
//! Layout: a size header `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column (`(0,1), (0,2), (1,2), (0,3), …`),
//! packed big-endian into 6-bit groups, each offset by 63. The final group
//! is zero-padded.

use thiserror::Error;

use crate::bits::bit;
use crate::graph::{HoffmanGraph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("graph6 payload too short: expected {expected} bytes, got {got}")]
    TruncatedPayload { expected: usize, got: usize },
    #[error("graph6 payload has {extra} trailing bytes")]
    TrailingBytes { extra: usize },
    #[error("graph6 padding bits are not zero")]
    NonCanonicalPadding,
    #[error("byte {0:#04x} outside the graph6 range 63..=126")]
    InvalidByte(u8),
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("graph6 encodes slim graphs only")]
    NotSlim,
}

const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &HoffmanGraph) -> Result<String, Graph6Error> {
    if !g.is_slim_graph() {
        return Err(Graph6Error::NotSlim);
    }
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ascii"))
}

pub fn parse_graph6(line: &str) -> Result<HoffmanGraph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let first = *bytes.first().ok_or(Graph6Error::MalformedHeader)?;
    if !(63..=126).contains(&first) {
        return Err(Graph6Error::MalformedHeader);
    }
    let (n, body) = if first < 126 {
        ((first - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::MalformedHeader);
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Graph6Error::MalformedHeader);
            }
            n = (n << 6) | (b - 63) as usize;
        }
        if n <= 62 {
            return Err(Graph6Error::MalformedHeader);
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::TruncatedPayload { expected, got: body.len() });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingBytes { extra: body.len() - expected });
    }
    let mut adj = vec![0u64; n];
    let mut idx = 0;
    let (mut i, mut j) = (0usize, 1usize);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte(b));
        }
        let v = b - 63;
        for s in (0..6).rev() {
            let set = (v >> s) & 1 == 1;
            if idx >= nbits {
                if set {
                    return Err(Graph6Error::NonCanonicalPadding);
                }
                continue;
            }
            if set {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            idx += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(HoffmanGraph::from_rows(n, 0, adj).expect("graph6 adjacency is a valid slim graph"))
}

/// Parses every non-empty line of a graph6 stream.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<HoffmanGraph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}
