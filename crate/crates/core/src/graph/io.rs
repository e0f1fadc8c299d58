//! Edge-list text and graph6.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `u < v`,
//! 0-indexed, each newline-terminated. graph6 follows the usual layout: a
//! size prefix, then the upper triangle column by column, six bits per byte
//! offset by 63.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// Picks a format from a file extension (`el` or `g6`).
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "el" | "txt" => Some(GraphFormat::EdgeList),
            "g6" => Some(GraphFormat::Graph6),
            _ => None,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "el" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            "g6" | "graph6" => Ok(GraphFormat::Graph6),
            _ => Err(Error::invalid(format!("unknown graph format {s:?}"))),
        }
    }
}

pub fn encode(g: &Graph, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::EdgeList => encode_edge_list(g).into_bytes(),
        GraphFormat::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s.into_bytes()
        }
    }
}

pub fn decode(bytes: &[u8], format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => decode_edge_list(bytes),
        GraphFormat::Graph6 => decode_graph6(bytes),
    }
}

fn encode_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

struct Lines<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with its starting offset.
    fn next_line(&mut self) -> Option<(usize, &'a [u8])> {
        while self.pos < self.bytes.len() {
            let start = self.pos;
            let end = self.bytes[start..]
                .iter()
                .position(|&b| b == b'\n')
                .map_or(self.bytes.len(), |i| start + i);
            self.pos = end + 1;
            let line = &self.bytes[start..end];
            if line.iter().any(|b| !b.is_ascii_whitespace()) {
                return Some((start, line));
            }
        }
        None
    }
}

fn parse_two(offset: usize, line: &[u8]) -> Result<(usize, usize)> {
    let text = std::str::from_utf8(line).map_err(|e| Error::parse(offset + e.valid_up_to(), "invalid UTF-8"))?;
    let mut nums = Vec::with_capacity(2);
    let mut col = 0;
    for tok in text.split_ascii_whitespace() {
        let at = offset + text[col..].find(tok).map_or(col, |i| col + i);
        col = at - offset + tok.len();
        let v: usize = tok
            .parse()
            .map_err(|_| Error::parse(at, format!("expected a nonnegative integer, found {tok:?}")))?;
        nums.push(v);
    }
    match nums.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::parse(offset, format!("expected two integers, found {}", nums.len()))),
    }
}

fn decode_edge_list(bytes: &[u8]) -> Result<Graph> {
    let mut lines = Lines { bytes, pos: 0 };
    let (off, header) = lines
        .next_line()
        .ok_or_else(|| Error::parse(0, "missing header line \"n m\""))?;
    let (n, m) = parse_two(off, header)?;
    let mut g = Graph::empty(n);
    for i in 0..m {
        let (off, line) = lines
            .next_line()
            .ok_or_else(|| Error::parse(bytes.len(), format!("expected {m} edges, found {i}")))?;
        let (u, v) = parse_two(off, line)?;
        if u == v {
            return Err(Error::parse(off, format!("loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(Error::parse(off, format!("edge ({u}, {v}) out of range for {n} vertices")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(off, format!("duplicate edge ({u}, {v})")));
        }
        g.set(u, v);
    }
    if let Some((off, _)) = lines.next_line() {
        return Err(Error::parse(off, format!("trailing data after {m} edges")));
    }
    Ok(g)
}

/// graph6 string of `g` without a trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

fn decode_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if bytes.starts_with(b">>graph6<<") {
        start = 10;
    }
    let mut end = bytes.len();
    while end > start && bytes[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let data = &bytes[start..end];
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(start + i, format!("byte {b:#04x} is not a graph6 character")));
        }
    }
    let take = |from: usize, count: usize| -> Result<usize> {
        if data.len() < from + count {
            return Err(Error::parse(start + data.len(), "truncated size prefix"));
        }
        Ok(data[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    let (n, body) = match data.first() {
        None => return Err(Error::parse(start, "empty graph6 string")),
        Some(126) if data.get(1) == Some(&126) => (take(2, 6)?, 8),
        Some(126) => (take(1, 3)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let payload = &data[body..];
    if payload.len() != need {
        return Err(Error::parse(
            start + body + payload.len().min(need),
            format!("expected {need} data bytes for {n} vertices, found {}", payload.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = payload[need - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(Error::parse(start + body + need - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
