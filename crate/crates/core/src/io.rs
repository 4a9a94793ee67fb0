//! Text formats: the `n m` edge list, graph6 and DOT.
//!
//! Edge-list files start with a header line `n m` followed by `m` lines
//! `u v r` (0-based ids, multiplicity `r >= 1`). Blank lines and lines
//! starting with `#` are ignored. Writers emit vertices renumbered `0..n` in
//! increasing id order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Auto,
    EdgeList,
    Graph6,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Format::Auto),
            "edgelist" => Ok(Format::EdgeList),
            "graph6" => Ok(Format::Graph6),
            other => Err(Error::argument(format!("unknown format {other:?}"))),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, tok: &str, what: &str) -> Result<u32> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what} {tok:?} is not a non-negative integer")))
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(hline, "header must be \"n m\""));
    }
    let n = number(hline, toks[0], "vertex count")? as usize;
    let m = number(hline, toks[1], "edge count")? as usize;
    let mut g = Multigraph::with_order(n);
    let mut seen = 0;
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(line, format!("expected \"u v r\", found {l:?}")));
        }
        let u = number(line, toks[0], "vertex")?;
        let v = number(line, toks[1], "vertex")?;
        let r = number(line, toks[2], "multiplicity")?;
        if u as usize >= n || v as usize >= n {
            return Err(Error::parse(line, format!("vertex out of range 0..{n}")));
        }
        if r == 0 {
            return Err(Error::parse(line, "multiplicity must be at least 1"));
        }
        if u == v {
            return Err(Error::parse(line, "self-loops are not allowed"));
        }
        g.add_edge(Vertex(u), Vertex(v), r)?;
        seen += 1;
        if seen > m {
            return Err(Error::parse(line, format!("more than the {m} edge lines announced")));
        }
    }
    if seen != m {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("header announces {m} edge lines, found {seen}"),
        ));
    }
    Ok(g)
}

fn positions(g: &Multigraph) -> BTreeMap<Vertex, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i)).collect()
}

pub fn write_edge_list(g: &Multigraph) -> String {
    let pos = positions(g);
    let mut out = format!("{} {}\n", g.order(), g.edges().count());
    for (u, v, r) in g.edges() {
        let _ = writeln!(out, "{} {} {r}", pos[&u], pos[&v]);
    }
    out
}

/// Compact single-line form `u v r,u v r,...` used by enumeration streams.
pub fn inline_edge_list(g: &Multigraph) -> String {
    let pos = positions(g);
    g.edges()
        .map(|(u, v, r)| format!("{} {} {r}", pos[&u], pos[&v]))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_graph6(line: &str) -> Result<Multigraph> {
    let s = line.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(1, "graph6 bytes must lie in 63..=126"));
    }
    let (n, rest) = match bytes {
        [] => return Err(Error::parse(1, "empty graph6 string")),
        [126, 126, ..] => {
            if bytes.len() < 8 {
                return Err(Error::parse(1, "truncated graph6 size"));
            }
            (six_bits(&bytes[2..8]), &bytes[8..])
        }
        [126, ..] => {
            if bytes.len() < 4 {
                return Err(Error::parse(1, "truncated graph6 size"));
            }
            (six_bits(&bytes[1..4]), &bytes[4..])
        }
        [b, ..] => ((*b - 63) as usize, &bytes[1..]),
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return Err(Error::parse(
            1,
            format!("graph6 body has {} bytes, {need} expected for order {n}", rest.len()),
        ));
    }
    let mut g = Multigraph::with_order(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(Vertex(i as u32), Vertex(j as u32), 1)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn six_bits(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// graph6 encoding; multigraphs are rejected.
pub fn write_graph6(g: &Multigraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::domain("graph6 cannot represent parallel edges"));
    }
    let n = g.order();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        return Err(Error::domain("graph too large for graph6"));
    }
    let ids: Vec<Vertex> = g.vertices().collect();
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.multiplicity(ids[i], ids[j]) > 0);
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 1 << (5 - i);
            }
        }
        out.push(b + 63);
    }
    Ok(String::from_utf8(out).unwrap())
}

/// DOT with each parallel copy as its own edge.
pub fn write_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v, r) in g.edges() {
        for _ in 0..r {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}

fn looks_like_header(text: &str) -> bool {
    content_lines(text).next().is_some_and(|(_, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        toks.len() == 2 && toks.iter().all(|t| t.parse::<u64>().is_ok())
    })
}

/// Parses a single graph, detecting the format when `format` is `Auto`.
pub fn parse_graph(text: &str, format: Format) -> Result<Multigraph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => {
            let (line, l) = content_lines(text)
                .next()
                .ok_or_else(|| Error::parse(1, "empty input"))?;
            parse_graph6(l).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(line, message),
                other => other,
            })
        }
        Format::Auto => {
            let first = text.trim_start().bytes().next();
            let g6 = first.is_some_and(|b| (63..=126).contains(&b)) && !looks_like_header(text);
            parse_graph(text, if g6 { Format::Graph6 } else { Format::EdgeList })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::families::*;

    #[test]
    fn edge_list_roundtrip() {
        for g in [dumbbell(), complete(4), petersen(), thick_path(3)] {
            let text = write_edge_list(&g);
            assert_eq!(parse_edge_list(&text).unwrap(), g);
        }
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        let e = parse_edge_list("2 1\n0 1\n").unwrap_err();
        assert_eq!(e, Error::parse(2, "expected \"u v r\", found \"0 1\""));
        assert!(matches!(parse_edge_list("2 1\n0 0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("2 2\n0 1 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("x y\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("# c\n2 1\n0 5 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn graph6_known_strings() {
        // K4 is "C~", Petersen is "IheA@GUAo".
        assert!(is_isomorphic(&parse_graph6("C~").unwrap(), &complete(4)));
        assert!(is_isomorphic(&parse_graph6("IheA@GUAo").unwrap(), &petersen()));
        assert_eq!(write_graph6(&complete(4)).unwrap(), "C~");
        assert!(write_graph6(&dumbbell()).is_err());
    }

    #[test]
    fn graph6_roundtrip_large() {
        let g = harary(3, 70);
        let s = write_graph6(&g).unwrap();
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn auto_detection() {
        assert_eq!(parse_graph("2 1\n0 1 3\n", Format::Auto).unwrap(), dumbbell());
        assert!(is_isomorphic(&parse_graph("C~\n", Format::Auto).unwrap(), &complete(4)));
    }

    #[test]
    fn dot_has_parallel_edges() {
        let dot = write_dot(&dumbbell());
        assert_eq!(dot.matches("0 -- 1").count(), 3);
    }
}
