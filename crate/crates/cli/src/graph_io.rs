//! Plain-text graph files and JSON transcripts.
//!
//! A graph file starts with `n m` and lists `m` edges `u v`, one per line,
//! vertices numbered from 0. Blank lines and lines starting with `#` are
//! ignored. A cubic cycle-plus-matching graph adds a trailer: a line `cycle`,
//! the `n` vertices in cycle order (whitespace separated, any line breaks),
//! a line `matching` and then `n/2` chord lines `u v`. The edge list must be
//! exactly the cycle plus the chords.

use std::fmt::Write as _;

use colorgame_core::{CubicModelGraph, Graph, MoveRecord};

use crate::error::{CliError, CliResult};

/// A graph read from a file, with its cubic model if the trailer was present.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub cubic: Option<CubicModelGraph>,
}

pub fn write_graph(g: &Graph, cubic: Option<&CubicModelGraph>) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(cm) = cubic {
        out.push_str("cycle\n");
        let order: Vec<String> = cm.cycle.iter().map(u32::to_string).collect();
        for chunk in order.chunks(20) {
            writeln!(out, "{}", chunk.join(" ")).unwrap();
        }
        out.push_str("matching\n");
        for (u, v) in cm.chords() {
            writeln!(out, "{u} {v}").unwrap();
        }
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

fn parse_pair(line: usize, text: &str) -> CliResult<(u32, u32)> {
    let mut it = text.split_whitespace();
    let mut num = |what: &str| -> CliResult<u32> {
        let tok = it.next().ok_or_else(|| perr(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| perr(line, format!("{what} `{tok}` is not a vertex number")))
    };
    let pair = (num("first vertex")?, num("second vertex")?);
    if it.next().is_some() {
        return Err(perr(line, "expected exactly two numbers"));
    }
    Ok(pair)
}

pub fn parse_graph(text: &str) -> CliResult<GraphFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty graph file"))?;
    let (n, m) = parse_pair(hl, header).map_err(|_| perr(hl, "header must be `n m`"))?;
    let (n, m) = (n as usize, m as usize);
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| perr(last + 1, format!("expected {m} edges, found {}", edges.len())))?;
        let (u, v) = parse_pair(ln, l)?;
        if u as usize >= n || v as usize >= n {
            return Err(perr(ln, format!("edge {u} {v} has a vertex >= n = {n}")));
        }
        if u == v {
            return Err(perr(ln, format!("self-loop at {u}")));
        }
        edges.push((u, v));
        last = ln;
    }
    let graph = Graph::from_edges(n, &edges).map_err(|e| perr(last, e.to_string()))?;
    let Some((cl, word)) = lines.next() else {
        return Ok(GraphFile { graph, cubic: None });
    };
    if word != "cycle" {
        return Err(perr(cl, format!("expected `cycle` or end of file, found `{word}`")));
    }
    let mut cycle = Vec::with_capacity(n);
    let mut ml = cl;
    loop {
        let (ln, l) = lines.next().ok_or_else(|| perr(ml + 1, "missing `matching` section"))?;
        ml = ln;
        if l == "matching" {
            break;
        }
        for tok in l.split_whitespace() {
            cycle.push(tok.parse::<u32>().map_err(|_| perr(ln, format!("`{tok}` is not a vertex number")))?);
        }
    }
    let mut chords = Vec::new();
    for (ln, l) in lines {
        chords.push(parse_pair(ln, l)?);
        ml = ln;
    }
    let cm = CubicModelGraph::from_parts(cycle, &chords).map_err(|e| perr(ml, e.to_string()))?;
    let mut a: Vec<_> = cm.graph.edges().collect();
    let mut b: Vec<_> = graph.edges().collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(perr(cl, "edge list differs from cycle plus matching"));
    }
    Ok(GraphFile { graph, cubic: Some(cm) })
}

pub fn read_graph(path: &str) -> CliResult<GraphFile> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn parse_transcript(text: &str) -> CliResult<Vec<MoveRecord>> {
    Ok(serde_json::from_str(text)?)
}
