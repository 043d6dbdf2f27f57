//! Graph file formats.
//!
//! Edge lists hold one `u v` pair per line over arbitrary non-negative integer
//! ids; `#` and `%` start comment lines. A line with a single id declares a
//! vertex without adding an edge, which is how isolated vertices survive a
//! round trip. METIS files start with `n m [fmt]` and then list the 1-based
//! neighbors of vertex `i` on its `i`-th line.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use iterqc_core::Graph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Edgelist,
    Metis,
    /// METIS if the first data line looks like a METIS header, else edge list.
    #[default]
    Auto,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "el" | "edges" => Ok(Format::Edgelist),
            "metis" | "graph" => Ok(Format::Metis),
            "auto" => Ok(Format::Auto),
            other => Err(format!("unknown format {other:?} (expected edgelist, metis or auto)")),
        }
    }
}

#[derive(Debug)]
pub enum ReadError {
    Io(io::Error),
    /// A malformed line, numbered from 1.
    Parse { line: usize, msg: String },
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadError::Io(e) => write!(f, "{e}"),
            ReadError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
        }
    }
}

impl std::error::Error for ReadError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            ReadError::Io(e) => Some(e),
            ReadError::Parse { .. } => None,
        }
    }
}

impl From<io::Error> for ReadError {
    fn from(e: io::Error) -> Self {
        ReadError::Io(e)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> ReadError {
    ReadError::Parse {
        line,
        msg: msg.into(),
    }
}

fn is_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#') || t.starts_with('%')
}

fn number<T: FromStr>(tok: &str, line: usize) -> Result<T, ReadError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

pub fn read_graph(path: &Path, format: Format) -> Result<Graph, ReadError> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text, format)
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, ReadError> {
    match format {
        Format::Edgelist => parse_edgelist(text),
        Format::Metis => parse_metis(text),
        Format::Auto => {
            if looks_like_metis(text) {
                parse_metis(text)
            } else {
                parse_edgelist(text)
            }
        }
    }
}

/// A METIS header is followed by at most `n` adjacency lines whose entries
/// lie in `1..=n` and total `2m`. Edge lists essentially never fit that.
fn looks_like_metis(text: &str) -> bool {
    let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('%'));
    let Some(header) = lines.by_ref().find(|l| !l.trim().is_empty()) else {
        return false;
    };
    let toks: Vec<u64> = match header.split_whitespace().map(str::parse).collect() {
        Ok(t) => t,
        Err(_) => return false,
    };
    if !(2..=4).contains(&toks.len()) {
        return false;
    }
    let (n, m) = (toks[0], toks[1]);
    let body: Vec<&str> = lines.collect();
    let used = body.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |i| i + 1);
    if used as u64 > n {
        return false;
    }
    let mut entries = 0u64;
    for tok in body[..used].iter().flat_map(|l| l.split_whitespace()) {
        match tok.parse::<u64>() {
            Ok(w) if (1..=n).contains(&w) => entries += 1,
            _ => return false,
        }
    }
    entries == 2 * m
}

pub fn parse_edgelist(text: &str) -> Result<Graph, ReadError> {
    let mut edges = Vec::new();
    let mut lone = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if is_comment(line) {
            continue;
        }
        let no = i + 1;
        let mut toks = line.split_whitespace();
        let u: u64 = number(toks.next().expect("non-blank line"), no)?;
        match toks.next() {
            Some(t) => edges.push((u, number(t, no)?)),
            None => lone.push(u),
        }
        // a third column (weight, timestamp) is ignored
    }
    if lone.is_empty() {
        return Ok(Graph::from_labeled_edges(edges));
    }
    // isolated vertices join the id space as self-loops, which are dropped
    edges.extend(lone.into_iter().map(|u| (u, u)));
    Ok(Graph::from_labeled_edges(edges))
}

pub fn parse_metis(text: &str) -> Result<Graph, ReadError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('%'));
    let (hno, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "missing METIS header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(parse_err(hno + 1, "METIS header needs `n m [fmt]`"));
    }
    let n: usize = number(toks[0], hno + 1)?;
    let m: usize = number(toks[1], hno + 1)?;
    if toks.len() > 2 && toks[2].trim_start_matches('0').chars().any(|c| c != '0') {
        return Err(parse_err(hno + 1, "weighted METIS graphs are not supported"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut v = 0usize;
    for (i, line) in lines {
        let no = i + 1;
        if v == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(no, format!("more than {n} adjacency lines")));
        }
        for tok in line.split_whitespace() {
            let w: usize = number(tok, no)?;
            if w == 0 || w > n {
                return Err(parse_err(no, format!("neighbor {w} outside 1..={n}")));
            }
            edges.push((v, w - 1));
        }
        v += 1;
    }
    if v < n {
        return Err(parse_err(text.lines().count().max(1), format!("expected {n} adjacency lines, found {v}")));
    }
    let g = Graph::from_edges(n, edges).map_err(|e| parse_err(hno + 1, e.to_string()))?;
    if g.m() != m {
        return Err(parse_err(hno + 1, format!("header declares {m} edges, adjacency lists give {}", g.m())));
    }
    let labels = (1..=n as u64).collect();
    Ok(g.with_labels(labels).expect("one label per vertex"))
}

/// Writes `g` as an edge list over its labels, preceded by `header` lines as
/// comments. Isolated vertices are written as single-id lines.
pub fn write_edgelist<W: Write>(g: &Graph, mut out: W, header: &[String]) -> io::Result<()> {
    for h in header {
        writeln!(out, "# {h}")?;
    }
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(out, "{}", g.label(v))?;
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    out.flush()
}
