//! Line-oriented text formats.
//!
//! ```text
//! DIGRAPH 1 <n> <m>        GRAPH 1 <n> <m>        PARTS 1
//! u v                      u v   (u < v)          <name> v1 v2 ...
//! ...                      ...                    ...
//! ```
//!
//! Certificates: `CYCLE 1 <n> v0 .. v_{n-1}`, `FACTOR 1 <n> <t>` followed by
//! `t` lines `<len> v0 ..`, and `EMBED 1 <k> <n> f0 .. f_{k-1}`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CycleFactor, Digraph, HamiltonCycle};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Serializes arcs in ascending lexicographic order.
pub fn write_digraph(g: &Digraph) -> String {
    let mut s = format!("DIGRAPH 1 {} {}\n", g.n(), g.arc_count());
    for (u, v) in g.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Serializes a symmetric digraph with each edge once, `u < v`.
pub fn write_graph(g: &Digraph) -> Result<String> {
    if !g.is_symmetric() {
        return Err(Error::ClassMismatch { expected: "undirected".into(), found: "digraph".into() });
    }
    let edges: Vec<_> = g.edges().collect();
    let mut s = format!("GRAPH 1 {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    Ok(s)
}

/// `GRAPH` for symmetric inputs, `DIGRAPH` otherwise.
pub fn write_auto(g: &Digraph) -> String {
    if g.is_symmetric() && g.arc_count() > 0 {
        write_graph(g).expect("symmetric")
    } else {
        write_digraph(g)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("bad {what} {tok:?}")))
}

fn parse_header<'a>(line: usize, l: &'a str, tag: &str) -> Result<std::str::SplitWhitespace<'a>> {
    let mut toks = l.split_whitespace();
    if toks.next() != Some(tag) {
        return Err(perr(line, format!("expected {tag} header")));
    }
    if toks.next() != Some("1") {
        return Err(perr(line, "unsupported format version"));
    }
    Ok(toks)
}

/// Parses either exchange format.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let undirected = header.starts_with("GRAPH");
    let mut toks = parse_header(hl, header, if undirected { "GRAPH" } else { "DIGRAPH" })?;
    let n = parse_usize(hl, toks.next(), "vertex count")?;
    let m = parse_usize(hl, toks.next(), "arc count")?;
    if toks.next().is_some() {
        return Err(perr(hl, "trailing tokens in header"));
    }
    let mut g = Digraph::empty(n).map_err(|e| perr(hl, e.to_string()))?;
    let mut count = 0;
    for (ln, l) in lines {
        let mut t = l.split_whitespace();
        let u = parse_usize(ln, t.next(), "vertex")?;
        let v = parse_usize(ln, t.next(), "vertex")?;
        if t.next().is_some() {
            return Err(perr(ln, "expected two vertices"));
        }
        if u >= n || v >= n {
            return Err(perr(ln, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(perr(ln, format!("self-loop at {u}")));
        }
        if undirected && u > v {
            return Err(perr(ln, "edges must be written with u < v"));
        }
        let fresh = g.insert_arc(u, v).map_err(|e| perr(ln, e.to_string()))?;
        if !fresh {
            return Err(perr(ln, format!("duplicate arc {u} {v}")));
        }
        if undirected {
            g.insert_arc(v, u).map_err(|e| perr(ln, e.to_string()))?;
        }
        count += 1;
    }
    if count != m {
        return Err(perr(hl, format!("header announces {m} lines, found {count}")));
    }
    Ok(g)
}

pub fn write_parts(parts: &[(String, Vec<usize>)]) -> String {
    let mut s = String::from("PARTS 1\n");
    for (name, vs) in parts {
        s.push_str(name);
        for v in vs {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

pub fn parse_parts(text: &str) -> Result<Vec<(String, Vec<usize>)>> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    parse_header(hl, header, "PARTS")?;
    lines
        .map(|(ln, l)| {
            let mut t = l.split_whitespace();
            let name = t.next().unwrap().to_string();
            let vs = t
                .map(|tok| tok.parse().map_err(|_| perr(ln, format!("bad vertex {tok:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            Ok((name, vs))
        })
        .collect()
}

pub fn write_cycle(h: &HamiltonCycle) -> String {
    let mut s = format!("CYCLE 1 {}", h.len());
    for v in h.order() {
        let _ = write!(s, " {v}");
    }
    s.push('\n');
    s
}

pub fn parse_cycle(text: &str) -> Result<HamiltonCycle> {
    let (ln, l) = content_lines(text).next().ok_or_else(|| perr(1, "empty input"))?;
    let mut toks = parse_header(ln, l, "CYCLE")?;
    let n = parse_usize(ln, toks.next(), "length")?;
    let order =
        toks.map(|t| t.parse().map_err(|_| perr(ln, format!("bad vertex {t:?}")))).collect::<Result<Vec<usize>>>()?;
    if order.len() != n {
        return Err(perr(ln, format!("expected {n} vertices, found {}", order.len())));
    }
    Ok(HamiltonCycle::new(order))
}

pub fn write_factor(n: usize, f: &CycleFactor) -> String {
    let mut s = format!("FACTOR 1 {n} {}\n", f.cycles().len());
    for c in f.cycles() {
        let _ = write!(s, "{}", c.len());
        for v in c {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

pub fn parse_factor(text: &str) -> Result<CycleFactor> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let mut toks = parse_header(hl, header, "FACTOR")?;
    let _n = parse_usize(hl, toks.next(), "vertex count")?;
    let t = parse_usize(hl, toks.next(), "cycle count")?;
    let mut cycles = Vec::new();
    for (ln, l) in lines {
        let mut it = l.split_whitespace();
        let len = parse_usize(ln, it.next(), "cycle length")?;
        let c = it
            .map(|tok| tok.parse().map_err(|_| perr(ln, format!("bad vertex {tok:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        if c.len() != len {
            return Err(perr(ln, "cycle length mismatch"));
        }
        cycles.push(c);
    }
    if cycles.len() != t {
        return Err(perr(hl, "cycle count mismatch"));
    }
    Ok(CycleFactor::new(cycles))
}

/// `map[i]` is the host vertex of pattern vertex `i`.
pub fn write_embedding(host_n: usize, map: &[usize]) -> String {
    let mut s = format!("EMBED 1 {} {host_n}", map.len());
    for v in map {
        let _ = write!(s, " {v}");
    }
    s.push('\n');
    s
}
