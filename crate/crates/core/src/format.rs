//! Text formats: graph6, DIMACS `.col`, and plain edge lists.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edge_list" | "edgelist" | "edges" => Ok(Format::EdgeList),
            "dimacs" | "col" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }

    fn from_graph(offset: usize, err: GraphError) -> Self {
        ParseError::new(offset, err.to_string())
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::EdgeList => parse_edge_list(text).map(|(g, _)| g),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::EdgeList => to_edge_list(g),
        Format::Dimacs => to_dimacs(g),
    }
}

/// Maximum order representable by the graph6 size prefix.
pub const GRAPH6_MAX_ORDER: usize = 68_719_476_735;

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    push_graph6_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

fn push_graph6_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        assert!(n <= GRAPH6_MAX_ORDER, "graph too large for graph6");
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// newline are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    let sextet = |i: usize| -> Result<usize, ParseError> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) => Err(ParseError::new(base + i, format!("byte 0x{b:02x} outside graph6 range"))),
            None => Err(ParseError::new(base + i, "unexpected end of graph6 data")),
        }
    };
    let (n, mut pos) = if bytes.first() != Some(&b'~') {
        (sextet(0)?, 1)
    } else if bytes.get(1) != Some(&b'~') {
        let mut n = 0;
        for i in 1..4 {
            n = (n << 6) | sextet(i)?;
        }
        (n, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | sextet(i)?;
        }
        (n, 8)
    };
    for i in pos..bytes.len() {
        sextet(i)?;
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = pos + total_bits.div_ceil(6);
    if bytes.len() != expected {
        let at = bytes.len().min(expected);
        return Err(ParseError::new(
            base + at,
            format!("graph6 body for n={n} needs {expected} bytes, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut bit = 0;
    let mut cur = 0;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                cur = sextet(pos)?;
                pos += 1;
            }
            if (cur >> (5 - bit % 6)) & 1 == 1 {
                g.add_edge(i, j).map_err(|e| ParseError::from_graph(base + pos - 1, e))?;
            }
            bit += 1;
        }
    }
    if bit % 6 != 0 && cur & ((1 << (6 - bit % 6)) - 1) != 0 {
        return Err(ParseError::new(base + pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

/// Parses a plain edge list: one `u v` pair per line, `#` comments, and an
/// optional `n=<k>` header. With a header the labels must already be dense
/// `0..k`; without one, labels are remapped in increasing order and the
/// returned table maps new index → original label.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<u64>), ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut raw: Vec<(u64, u64, usize)> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let at = line_start + lead;
        if let Some(rest) = trimmed.strip_prefix("n=") {
            if declared_n.is_some() || !raw.is_empty() {
                return Err(ParseError::new(at, "n= header must come first and only once"));
            }
            declared_n = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| ParseError::new(at, format!("bad vertex count {rest:?}")))?,
            );
            continue;
        }
        let mut fields = Vec::new();
        let mut col = 0;
        for tok in content.split_whitespace() {
            let tok_at = line_start + content[col..].find(tok).unwrap() + col;
            col = tok_at - line_start + tok.len();
            fields.push((tok, tok_at));
        }
        if fields.len() != 2 {
            return Err(ParseError::new(at, format!("expected two vertex labels, found {}", fields.len())));
        }
        let label = |(tok, pos): (&str, usize)| {
            tok.parse::<u64>()
                .map_err(|_| ParseError::new(pos, format!("invalid vertex label {tok:?}")))
        };
        raw.push((label(fields[0])?, label(fields[1])?, at));
    }

    let labels: Vec<u64> = match declared_n {
        Some(n) => (0..n as u64).collect(),
        None => {
            let set: std::collections::BTreeSet<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
            set.into_iter().collect()
        }
    };
    let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut g = Graph::new(labels.len());
    for (u, v, at) in raw {
        let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) else {
            return Err(ParseError::new(at, format!("vertex label out of range for n={}", labels.len())));
        };
        g.add_edge(a, b).map_err(|e| ParseError::from_graph(at, e))?;
    }
    Ok((g, labels))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses DIMACS `.col`: `c` comments, one `p edge n m` line, then `e u v`
/// lines with 1-based endpoints. The edge count must match the header.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut g: Option<Graph> = None;
    let mut declared_m = 0;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let at = offset + (line.len() - line.trim_start().len());
        offset += line.len();
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if g.is_some() {
                    return Err(ParseError::new(at, "duplicate problem line"));
                }
                let kind = fields.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(ParseError::new(at, "expected 'p edge <n> <m>'"));
                }
                let nums: Vec<usize> = fields
                    .map(|t| t.parse().map_err(|_| ParseError::new(at, format!("bad number {t:?}"))))
                    .collect::<Result<_, _>>()?;
                let [n, m] = nums[..] else {
                    return Err(ParseError::new(at, "expected 'p edge <n> <m>'"));
                };
                g = Some(Graph::new(n));
                declared_m = m;
            }
            Some("e") => {
                let graph = g.as_mut().ok_or_else(|| ParseError::new(at, "edge before problem line"))?;
                let nums: Vec<usize> = fields
                    .map(|t| t.parse().map_err(|_| ParseError::new(at, format!("bad number {t:?}"))))
                    .collect::<Result<_, _>>()?;
                let [u, v] = nums[..] else {
                    return Err(ParseError::new(at, "expected 'e <u> <v>'"));
                };
                if u == 0 || v == 0 {
                    return Err(ParseError::new(at, "DIMACS vertices are 1-based"));
                }
                graph.add_edge(u - 1, v - 1).map_err(|e| ParseError::from_graph(at, e))?;
            }
            Some(other) => return Err(ParseError::new(at, format!("unknown line type {other:?}"))),
        }
    }
    let g = g.ok_or_else(|| ParseError::new(text.len(), "missing problem line"))?;
    if g.m() != declared_m {
        return Err(ParseError::new(
            text.len(),
            format!("header declares {declared_m} edges, found {}", g.m()),
        ));
    }
    Ok(g)
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, path};

    #[test]
    fn graph6_small_star() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(to_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_rejects_garbage() {
        let err = parse_graph6("D?").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse_graph6("D? {").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(parse_graph6("D?|").is_err(), "padding bits must be zero");
    }

    #[test]
    fn graph6_long_size_prefix() {
        let g = path(70).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_path() {
        let g = parse_graph("0 1\n1 2", Format::EdgeList).unwrap();
        assert_eq!(g, path(3).unwrap());
        let (g, labels) = parse_edge_list("10 20\n20 30\n").unwrap();
        assert_eq!(g, path(3).unwrap());
        assert_eq!(labels, vec![10, 20, 30]);
    }

    #[test]
    fn edge_list_header_keeps_isolated() {
        let g = parse_graph("n=4\n0 1\n", Format::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (4, 1));
        let err = parse_graph("n=2\n0 5\n", Format::EdgeList).unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn edge_list_rejects_loops_and_duplicates() {
        let err = parse_graph("0 1\n1 1\n", Format::EdgeList).unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(err.message.contains("self-loop"));
        let err = parse_graph("0 1\n 1 0\n", Format::EdgeList).unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse_graph("0 x\n", Format::EdgeList).unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn dimacs_cycle() {
        let text = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
        assert_eq!(parse_graph(text, Format::Dimacs).unwrap(), cycle(5).unwrap());
        assert!(parse_dimacs("p edge 3 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("p edge 3 1\ne 0 2\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
    }

    #[test]
    fn serializers_round_trip() {
        let g = cycle(7).unwrap().disjoint_union(&Graph::new(2));
        for f in [Format::Graph6, Format::EdgeList, Format::Dimacs] {
            assert_eq!(parse_graph(&serialize_graph(&g, f), f).unwrap(), g, "{f:?}");
        }
    }
}
