//! On-disk hypergraph formats.
//!
//! Canonical JSON: `{"vertex_count": n, "edges": [[ids...], ...]}` with each
//! edge sorted and the edge list sorted lexicographically. A plain-text form
//! is also accepted: first line the vertex count, then one edge per line as
//! space-separated ids.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

pub fn to_canonical_json(g: &Hypergraph) -> String {
    let mut edges: Vec<Vec<usize>> = g.edges().to_vec();
    edges.sort();
    let raw = RawHypergraph {
        vertex_count: g.vertex_count(),
        edges,
    };
    serde_json::to_string(&raw).expect("hypergraph serialization cannot fail")
}

pub fn from_json(text: &str) -> Result<Hypergraph> {
    let raw: RawHypergraph =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Hypergraph::new(raw.vertex_count, raw.edges)
}

pub fn to_text(g: &Hypergraph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    let mut edges: Vec<Vec<usize>> = g.edges().to_vec();
    edges.sort();
    for edge in edges {
        let ids: Vec<String> = edge.iter().map(usize::to_string).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<Hypergraph> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty hypergraph file".into()))?;
    let vertex_count: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count `{first}` (line 1)")))?;
    let mut edges = Vec::new();
    for (i, line) in lines.enumerate() {
        let edge: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(str::parse).collect();
        let edge = edge.map_err(|_| Error::Parse(format!("bad edge `{line}` (line {})", i + 2)))?;
        edges.push(edge);
    }
    Hypergraph::new(vertex_count, edges)
}

/// Parses either format, sniffing JSON by its leading brace.
pub fn from_str_any(text: &str) -> Result<Hypergraph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}

pub fn load(path: &Path) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path)?;
    from_str_any(&text)
}

pub fn save_json(g: &Hypergraph, path: &Path) -> Result<()> {
    std::fs::write(path, to_canonical_json(g) + "\n")?;
    Ok(())
}
