//! graph6 and edge-list formats.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

const HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
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
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is ascii")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |pos: usize, msg: &str| Error::parse(format!("byte {pos}"), msg);
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(i, "character outside graph6 range"));
        }
    }
    if bytes.is_empty() {
        return Err(bad(0, "empty graph6 string"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, 1)
    } else if bytes.len() > 1 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(bad(bytes.len(), "truncated vertex count"));
        }
        let v = bytes[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b as usize - 63));
        (v, 4)
    } else {
        if bytes.len() < 8 {
            return Err(bad(bytes.len(), "truncated vertex count"));
        }
        let v = bytes[2..8].iter().fold(0usize, |a, &b| (a << 6) | (b as usize - 63));
        (v, 8)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(bad(pos, &format!("expected {need} data bytes for n={n}, found {}", bytes.len() - pos)));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut cur = 0u8;
    'outer: for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                cur = bytes[pos] - 63;
                pos += 1;
            }
            if cur >> (5 - bit % 6) & 1 == 1 {
                edges.push(Edge(i, j));
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    let rest = nbits % 6;
    if rest != 0 && cur & ((1u8 << (6 - rest)) - 1) != 0 {
        return Err(bad(pos - 1, "nonzero padding bits"));
    }
    Ok(Graph::build(n, &edges))
}

/// Parses "u v" lines; an optional first line "n <count>" fixes the vertex count.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut first = true;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let loc = || format!("line {line_no}");
        let toks: Vec<&str> = line.split_whitespace().collect();
        if first && toks.first() == Some(&"n") {
            first = false;
            if toks.len() != 2 {
                return Err(Error::parse(loc(), "expected `n <count>`"));
            }
            let c = toks[1].parse::<usize>().map_err(|_| Error::parse(loc(), "bad vertex count"))?;
            declared = Some(c);
            continue;
        }
        first = false;
        if toks.len() != 2 {
            return Err(Error::parse(loc(), "expected two vertex indices"));
        }
        let u = toks[0].parse::<usize>().map_err(|_| Error::parse(loc(), format!("bad vertex `{}`", toks[0])))?;
        let v = toks[1].parse::<usize>().map_err(|_| Error::parse(loc(), format!("bad vertex `{}`", toks[1])))?;
        if u == v {
            return Err(Error::parse(loc(), format!("self-loop at vertex {u}")));
        }
        if let Some(c) = declared {
            if u >= c || v >= c {
                return Err(Error::parse(loc(), format!("vertex out of range for n={c}")));
            }
        }
        pairs.push(Edge::new(u, v));
    }
    let n = declared.unwrap_or_else(|| pairs.iter().map(|e| e.1 + 1).max().unwrap_or(0));
    Ok(Graph::build(n, &pairs))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.0, e.1));
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

/// graph6 never contains digits or spaces, edge lists always do.
pub fn detect_format(text: &str) -> Format {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with(HEADER) => Format::Graph6,
        Some(l) if l.chars().any(|c| c.is_ascii_digit() || c.is_whitespace()) => Format::EdgeList,
        Some(l) if l == "n" => Format::EdgeList,
        _ => Format::Graph6,
    }
}

/// Reads one edge-list graph or a stream of graph6 lines.
pub fn read_graphs(text: &str, format: Option<Format>) -> Result<Vec<Graph>> {
    match format.unwrap_or_else(|| detect_format(text)) {
        Format::EdgeList => Ok(vec![parse_edge_list(text)?]),
        Format::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                parse_graph6(l.trim()).map_err(|e| match e {
                    Error::Parse { location, message } => {
                        Error::parse(format!("line {}, {location}", i + 1), message)
                    }
                    other => other,
                })
            })
            .collect(),
    }
}
