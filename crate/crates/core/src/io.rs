//! Text formats: `.h3` hypergraphs, colorings, and `.cert` vector files.
//!
//! All vertex ids are 1-indexed on disk and 0-indexed in memory.
//!
//! ```text
//! c two edges sharing vertex 3
//! p h3 5 2
//! 1 2 3
//! 3 4 5
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, RankedColoring};
use crate::sdp::VectorSolution;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad number `{tok}`")))
}

/// Parses an `.h3` file. Edges are validated strictly: repeated vertices,
/// out-of-range ids and duplicate edges are errors.
pub fn parse_h3(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing `p h3` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "h3" {
        return Err(parse_err(hl, "expected `p h3 <n> <m>`"));
    }
    let n: usize = parse_num(hl, toks[2])?;
    let m: usize = parse_num(hl, toks[3])?;
    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(ln, "edge lines need three vertex ids"));
        }
        let mut e = [0usize; 3];
        for (slot, t) in e.iter_mut().zip(&toks) {
            let v: usize = parse_num(ln, t)?;
            if v == 0 {
                return Err(parse_err(ln, "vertex ids are 1-indexed"));
            }
            *slot = v - 1;
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(parse_err(hl, format!("header declares {m} edges, found {}", edges.len())));
    }
    Hypergraph::new_strict(n, edges)
}

pub fn format_h3(h: &Hypergraph) -> String {
    let mut out = format!("p h3 {} {}\n", h.n(), h.num_edges());
    for e in h.edges() {
        let _ = writeln!(out, "{} {} {}", e[0] + 1, e[1] + 1, e[2] + 1);
    }
    out
}

/// Parses `<vertex> <color>` lines. Vertices not listed stay unassigned.
pub fn parse_coloring(text: &str, n: usize) -> Result<RankedColoring> {
    let mut c = RankedColoring::new(n);
    for (ln, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(ln, "expected `<vertex> <color>`"));
        }
        let v: usize = parse_num(ln, toks[0])?;
        let r: i64 = parse_num(ln, toks[1])?;
        if v == 0 || v > n {
            return Err(parse_err(ln, format!("vertex {v} out of range 1..={n}")));
        }
        if c.is_assigned(v - 1) {
            return Err(parse_err(ln, format!("vertex {v} colored twice")));
        }
        c.assign(v - 1, r);
    }
    Ok(c)
}

/// One line per assigned vertex, in vertex order.
pub fn format_coloring(c: &RankedColoring) -> String {
    let mut out = String::new();
    for v in c.domain() {
        let _ = writeln!(out, "{} {}", v + 1, c.rank(v).unwrap_or_default());
    }
    out
}

/// Parses a `.cert` file for `h`; residuals are computed against `h`.
pub fn parse_cert(text: &str, h: &Hypergraph, tol: f64) -> Result<VectorSolution> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing `<n+1> <d>` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hl, "expected `<n+1> <d>`"));
    }
    let rows: usize = parse_num(hl, toks[0])?;
    let d: usize = parse_num(hl, toks[1])?;
    if rows != h.n() + 1 {
        return Err(parse_err(hl, format!("expected {} rows for {} vertices", h.n() + 1, h.n())));
    }
    let mut data: Vec<Vec<f64>> = Vec::with_capacity(rows);
    for (ln, l) in lines {
        let row = l
            .split_whitespace()
            .map(|t| parse_num(ln, t))
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != d {
            return Err(parse_err(ln, format!("expected {d} coordinates")));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(parse_err(hl, format!("expected {rows} rows, found {}", data.len())));
    }
    let vstar = data.remove(0);
    Ok(VectorSolution::from_rows(h, vstar, &data, tol))
}

/// Shortest round-trip decimal representation of every coordinate.
pub fn format_cert(sol: &VectorSolution) -> String {
    let mut out = format!("{} {}\n", sol.n() + 1, sol.d);
    for row in std::iter::once(sol.vstar.as_slice()).chain(sol.rows()) {
        let line: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_h3(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_h3(&fs::read_to_string(path)?)
}

pub fn read_coloring(path: impl AsRef<Path>, n: usize) -> Result<RankedColoring> {
    parse_coloring(&fs::read_to_string(path)?, n)
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    Ok(fs::write(path, text)?)
}
