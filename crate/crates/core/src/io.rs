//! Text formats.
//!
//! Graphs come as an edge list (`n m` header, then `m` lines `u v`,
//! 0-based) or as DIMACS (`p edge n m`, then `e u v`, 1-based). The first
//! non-comment token picks the format. `#` starts a comment line in both,
//! `c` in DIMACS. A line `---` ends the graph; what follows is an extra
//! section whose meaning depends on the command:
//!
//! - allowed pairs, one `u v` per line (a leading `e` is accepted),
//! - a coloring, one `c <vertex> <color>` line per vertex,
//! - a bipartition, one or more `left <v>...` lines.
//!
//! Vertex ids in a section use the same base as the graph.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{EdgePair, Graph, VertexSet};
use crate::reductions::{BipartiteGraph, Coloring, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range")]
    Range { line: usize, vertex: i64 },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: i64 },
    #[error("header promises {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: {n} vertices exceed the limit of {MAX_VERTICES}")]
    TooLarge { line: usize, n: usize },
    #[error("missing header")]
    MissingHeader,
    #[error("missing `---` section")]
    MissingSection,
    #[error(transparent)]
    Bipartite(#[from] ReductionError),
}

/// Largest vertex count a file may declare. Adjacency is stored as
/// bitsets, so memory grows quadratically.
pub const MAX_VERTICES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl Format {
    /// Offset between internal ids and ids in the file.
    pub fn base(self) -> usize {
        match self {
            Format::EdgeList => 0,
            Format::Dimacs => 1,
        }
    }
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input<'a> {
    pub graph: Graph,
    pub format: Format,
    /// Text after `---` and the file line number it starts on.
    pub section: Option<(usize, &'a str)>,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn is_comment(line: &str, format: Option<Format>) -> bool {
    let t = line.trim();
    t.is_empty()
        || t.starts_with('#')
        || (format != Some(Format::EdgeList)
            && (t == "c" || t.starts_with("c ") || t.starts_with("c\t")))
}

fn number(tok: &str, line: usize) -> Result<i64, ParseError> {
    tok.parse::<i64>()
        .map_err(|_| syntax(line, format!("expected an integer, got `{tok}`")))
}

fn count(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("expected a count, got `{tok}`")))
}

/// Converts a file id to an internal one.
fn vertex(raw: i64, base: usize, n: usize, line: usize) -> Result<usize, ParseError> {
    match raw.checked_sub(base as i64) {
        Some(v) if v >= 0 && (v as u64) < n as u64 => Ok(v as usize),
        _ => Err(ParseError::Range { line, vertex: raw }),
    }
}

fn edge(a: i64, b: i64, base: usize, n: usize, line: usize) -> Result<EdgePair, ParseError> {
    let (u, v) = (vertex(a, base, n, line)?, vertex(b, base, n, line)?);
    EdgePair::try_new(u, v).ok_or(ParseError::SelfLoop { line, vertex: a })
}

/// Splits off the `---` section.
fn split(text: &str) -> (&str, Option<(usize, &str)>) {
    let mut offset = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if line.trim() == "---" {
            let rest = &text[offset + line.len()..];
            return (&text[..offset], Some((i + 2, rest)));
        }
        offset += line.len();
    }
    (text, None)
}

/// Parses a graph file, with an optional trailing section.
pub fn parse_input(text: &str) -> Result<Input<'_>, ParseError> {
    let (body, section) = split(text);
    let mut lines = body.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !is_comment(l, None))
        .ok_or(ParseError::MissingHeader)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (format, n, m) = match toks.as_slice() {
        ["p", kind, n, m] => {
            if *kind != "edge" && *kind != "col" {
                return Err(syntax(hline, format!("unknown problem type `{kind}`")));
            }
            (Format::Dimacs, count(n, hline)?, count(m, hline)?)
        }
        [n, m] => (Format::EdgeList, count(n, hline)?, count(m, hline)?),
        _ => return Err(syntax(hline, "expected header `n m` or `p edge n m`")),
    };
    if n > MAX_VERTICES {
        return Err(ParseError::TooLarge { line: hline, n });
    }
    let base = format.base();
    let mut edges = BTreeSet::new();
    let mut found = 0;
    for (line, text) in lines {
        if is_comment(text, Some(format)) {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        let (a, b) = match (format, toks.as_slice()) {
            (Format::EdgeList, [a, b]) | (Format::Dimacs, ["e", a, b]) => (a, b),
            (Format::EdgeList, _) => return Err(syntax(line, "expected `u v`")),
            (Format::Dimacs, _) => return Err(syntax(line, "expected `e u v`")),
        };
        let e = edge(number(a, line)?, number(b, line)?, base, n, line)?;
        edges.insert(e);
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCount { expected: m, found });
    }
    let graph = Graph::empty(n).with_edges(edges);
    Ok(Input {
        graph,
        format,
        section,
    })
}

/// Parses a graph file, ignoring any trailing section.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_input(text).map(|i| i.graph)
}

fn section_lines(start: usize, text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(move |(i, l)| (start + i, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

impl Input<'_> {
    fn section(&self) -> Result<(usize, &str), ParseError> {
        self.section.ok_or(ParseError::MissingSection)
    }

    /// Allowed pairs for a sandwich instance. Pairs that are already
    /// edges are rejected; duplicates collapse.
    pub fn allowed_pairs(&self) -> Result<BTreeSet<EdgePair>, ParseError> {
        let (start, text) = self.section()?;
        let (n, base) = (self.graph.n(), self.format.base());
        let mut out = BTreeSet::new();
        for (line, toks) in section_lines(start, text) {
            let (a, b) = match toks.as_slice() {
                [a, b] | ["e", a, b] => (a, b),
                _ => return Err(syntax(line, "expected `u v`")),
            };
            let e = edge(number(a, line)?, number(b, line)?, base, n, line)?;
            if self.graph.has_edge(e.u, e.v) {
                return Err(syntax(line, "allowed pair is already an edge"));
            }
            out.insert(e);
        }
        Ok(out)
    }

    /// A coloring with every vertex colored exactly once.
    pub fn coloring(&self) -> Result<Coloring, ParseError> {
        let (start, text) = self.section()?;
        let (n, base) = (self.graph.n(), self.format.base());
        let mut colors = vec![None; n];
        for (line, toks) in section_lines(start, text) {
            let ["c", v, c] = toks.as_slice() else {
                return Err(syntax(line, "expected `c <vertex> <color>`"));
            };
            let v = vertex(number(v, line)?, base, n, line)?;
            let c = count(c, line)?;
            if colors[v].replace(c).is_some() {
                return Err(syntax(line, "vertex colored twice"));
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| {
                c.ok_or_else(|| syntax(start, format!("vertex {} has no color", v + base)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Coloring::new(colors))
    }

    /// A bipartition given by its left side; every other vertex is right.
    pub fn bipartite(&self) -> Result<BipartiteGraph, ParseError> {
        let (start, text) = self.section()?;
        let (n, base) = (self.graph.n(), self.format.base());
        let mut left = VertexSet::new();
        for (line, toks) in section_lines(start, text) {
            let Some((&"left", ids)) = toks.split_first() else {
                return Err(syntax(line, "expected `left <v>...`"));
            };
            for id in ids {
                left.insert(vertex(number(id, line)?, base, n, line)?);
            }
        }
        let right = VertexSet::full(n).difference(&left);
        Ok(BipartiteGraph::new(left, right, self.graph.edges())?)
    }
}

/// Edge-list text for `g`, edges in ascending order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}

/// DIMACS text for `g`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("e {} {}\n", e.u + 1, e.v + 1));
    }
    out
}
