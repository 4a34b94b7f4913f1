use std::str::FromStr;

use super::{check_limit, Graph, DEFAULT_VERTEX_LIMIT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    /// `n m` header followed by `m` lines `u v` with 0-based endpoints.
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edges" | "edge_list" | "edge-list" => Ok(GraphFormat::EdgeList),
            _ => Err(Error::MalformedHeader(format!("unknown graph format `{s}`"))),
        }
    }
}

pub fn load_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    load_graph_with_limit(text, format, DEFAULT_VERTEX_LIMIT)
}

pub fn load_graph_with_limit(text: &str, format: GraphFormat, limit: usize) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text.trim(), limit),
        GraphFormat::EdgeList => parse_edge_list(text, limit),
    }
}

const BIAS: u8 = 63;

fn parse_graph6(s: &str, limit: usize) -> Result<Graph> {
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let (&first, body) = bytes.split_first().ok_or_else(|| Error::Graph6("empty input".into()))?;
    if !(BIAS..=126).contains(&first) {
        return Err(Error::Graph6(format!("invalid size byte {first:#x}")));
    }
    if first == 126 {
        return Err(Error::Graph6("multi-byte sizes (n > 62) are not supported".into()));
    }
    let n = (first - BIAS) as usize;
    check_limit(n, limit)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!("expected {expected} data bytes for {n} vertices, found {}", body.len())));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(BIAS..=126).contains(&byte) {
                return Err(Error::Graph6(format!("invalid data byte {byte:#x}")));
            }
            if (byte - BIAS) >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    // Padding bits must be zero.
    if let Some(&last) = body.last() {
        if !(BIAS..=126).contains(&last) {
            return Err(Error::Graph6(format!("invalid data byte {last:#x}")));
        }
        let used = pairs - (expected - 1) * 6;
        if (last - BIAS) & ((1u8 << (6 - used)) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

/// Encodes `g` in graph6 (single-byte size, so `n <= 62`).
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > 62 {
        return Err(Error::TooLarge { n, limit: 62 });
    }
    let mut out = vec![BIAS + n as u8];
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(BIAS + acc);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(BIAS + (acc << (6 - k)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn parse_edge_list(text: &str, limit: usize) -> Result<Graph> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r').trim()).enumerate().filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::MalformedHeader("missing `n m` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse = |s: &str| s.parse::<usize>().ok();
    let (n, m) = match fields.as_slice() {
        [a, b] => match (parse(a), parse(b)) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(Error::MalformedHeader(header.to_string())),
        },
        _ => return Err(Error::MalformedHeader(header.to_string())),
    };
    check_limit(n, limit)?;
    let mut g = Graph::empty(n)?;
    let mut found = 0;
    for (idx, line) in lines {
        let ends: Vec<Option<usize>> = line.split_whitespace().map(parse).collect();
        let (u, v) = match ends.as_slice() {
            [Some(u), Some(v)] => (*u, *v),
            _ => return Err(Error::MalformedEdge { line: idx + 1, text: line.to_string() }),
        };
        g.insert_edge(u, v)?;
        found += 1;
    }
    if found != m {
        return Err(Error::EdgeCountMismatch { expected: m, found });
    }
    Ok(g)
}
