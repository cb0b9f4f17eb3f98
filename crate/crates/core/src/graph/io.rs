//! Edge-list text and graph6 encodings.

use std::str::FromStr;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// graph6 uses a single size byte for orders up to 62.
pub const GRAPH6_MAX_ORDER: usize = 62;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    #[default]
    Auto,
    Graph6,
    Edges,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(InputFormat::Auto),
            "graph6" | "g6" => Ok(InputFormat::Graph6),
            "edges" | "edge-list" => Ok(InputFormat::Edges),
            other => Err(Error::Parse(format!("unknown input format `{other}`"))),
        }
    }
}

/// Parses the edge-list format: a first line holding `n`, then one `u v`
/// pair per line. Blank lines are skipped; loops and repeated edges are
/// rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let n: usize = header.parse().map_err(|_| Error::Parse(format!("expected vertex count, found `{header}`")))?;
    let mut g = Graph::try_empty(n)?;
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(Error::Parse(format!("line {lineno}: expected `u v`, found `{line}`")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("line {lineno}: bad vertex `{s}`")));
        let (u, v) = (parse(u)?, parse(v)?);
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if g.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooLarge { what: "graph6", n, max: GRAPH6_MAX_ORDER });
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Decodes a single graph6 string; an optional `>>graph6<<` header and
/// surrounding whitespace are accepted.
pub fn read_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    let Some((&first, body)) = bytes.split_first() else {
        return Err(Error::Parse("empty graph6 string".into()));
    };
    if let Some(&bad) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {bad:#04x}")));
    }
    if first == 126 {
        return Err(Error::TooLarge { what: "graph6", n: 63, max: GRAPH6_MAX_ORDER });
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for n = {n}",
            body.len(),
            bits.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// True if the first non-empty line looks like graph6.
pub fn looks_like_graph6(text: &str) -> bool {
    let Some(line) = text.lines().map(str::trim).find(|l| !l.is_empty()) else {
        return false;
    };
    line.starts_with(GRAPH6_HEADER) || line.bytes().all(|b| (63..=126).contains(&b))
}

pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph> {
    match format {
        InputFormat::Graph6 => read_graph6(first_line(text)),
        InputFormat::Edges => parse_edge_list(text),
        InputFormat::Auto if looks_like_graph6(text) => read_graph6(first_line(text)),
        InputFormat::Auto => parse_edge_list(text),
    }
}

fn first_line(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, star};

    #[test]
    fn graph6_known_strings() {
        // Standard encodings from the format description.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g).unwrap(), "DQc");
        assert_eq!(write_graph6(&complete(4)).unwrap(), "C~");
        assert_eq!(write_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(read_graph6("DQc").unwrap(), g);
        assert_eq!(read_graph6(">>graph6<<C~\n").unwrap(), complete(4));
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("D").is_err());
        assert!(read_graph6("DQcc").is_err());
        assert!(read_graph6("C 1").is_err());
        assert!(matches!(read_graph6("~?@?"), Err(Error::TooLarge { .. })));
        assert!(write_graph6(&Graph::empty(63)).is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("4\n0 1\n\n1 2\n  2 3 \n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(parse_edge_list(&write_edge_list(&cycle(6).unwrap())).unwrap(), cycle(6).unwrap());
        assert_eq!(parse_edge_list("3\n0 1\n1 0\n"), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(parse_edge_list("3\n2 2\n"), Err(Error::SelfLoop(2)));
        assert!(parse_edge_list("3\n0 3\n").is_err());
        assert!(parse_edge_list("3\n0 1 2\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn auto_detection() {
        let s = star(5).unwrap();
        let g6 = write_graph6(&s).unwrap();
        assert!(looks_like_graph6(&g6));
        assert!(!looks_like_graph6("5\n0 1\n"));
        assert_eq!(parse_graph(&g6, InputFormat::Auto).unwrap(), s);
        assert_eq!(parse_graph(&write_edge_list(&s), InputFormat::Auto).unwrap(), s);
    }
}
