//! Text interchange format for graphs.
//!
//! The format is DIMACS-style and 1-indexed:
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! The writer is canonical: edges are emitted with `u < v` in lexicographic
//! order. The parser accepts edges in either orientation but rejects
//! duplicates, self-loops and out-of-range endpoints outright rather than
//! repairing them.

use std::fmt::Write as _;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {0}: expected header `p edge <n> <m>`")]
    BadHeader(usize),
    #[error("missing header `p edge <n> <m>`")]
    MissingHeader,
    #[error("line {0}: second header")]
    DuplicateHeader(usize),
    #[error("line {0}: expected edge line `e <u> <v>`")]
    BadEdgeLine(usize),
    #[error("line {line}: vertex index {index} out of range 1..={n}")]
    IndexOutOfRange { line: usize, index: i64, n: usize },
    #[error("line {0}: self-loop")]
    SelfLoop(usize),
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {0}: unrecognized line")]
    UnexpectedLine(usize),
    #[error("header declares {declared} edges, file has {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Parses the graph format. Edge order in the file does not affect the result.
pub fn parse_graph(text: &str) -> Result<Graph, GraphParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(GraphParseError::DuplicateHeader(lineno));
                }
                let kind = tokens.next();
                let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let m = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (kind, n, m, tokens.next()) {
                    (Some("edge"), Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(GraphParseError::BadHeader(lineno)),
                }
            }
            Some("e") => {
                let (n, _) = header.ok_or(GraphParseError::MissingHeader)?;
                let u = parse_endpoint(tokens.next(), lineno, n)?;
                let v = parse_endpoint(tokens.next(), lineno, n)?;
                if tokens.next().is_some() {
                    return Err(GraphParseError::BadEdgeLine(lineno));
                }
                if u == v {
                    return Err(GraphParseError::SelfLoop(lineno));
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(GraphParseError::DuplicateEdge {
                        line: lineno,
                        u: key.0 + 1,
                        v: key.1 + 1,
                    });
                }
                edges.push(key);
            }
            _ => return Err(GraphParseError::UnexpectedLine(lineno)),
        }
    }

    let (n, m) = header.ok_or(GraphParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(GraphParseError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges).expect("parser validated the edge list"))
}

fn parse_endpoint(
    token: Option<&str>,
    lineno: usize,
    n: usize,
) -> Result<usize, GraphParseError> {
    let token = token.ok_or(GraphParseError::BadEdgeLine(lineno))?;
    let value: i64 = token
        .parse()
        .map_err(|_| GraphParseError::BadEdgeLine(lineno))?;
    if value < 1 || value as usize > n {
        return Err(GraphParseError::IndexOutOfRange {
            line: lineno,
            index: value,
            n,
        });
    }
    Ok(value as usize - 1)
}

/// Canonical writer; `parse_graph(write_graph(g)) == g`.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.num_edges()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Parses a vertex-set file: whitespace-separated 1-indexed vertex ids,
/// `c`-prefixed comment lines allowed. Returns sorted 0-indexed vertices.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<Vec<usize>, GraphParseError> {
    let mut members = std::collections::BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for token in line.split_ascii_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| GraphParseError::BadEdgeLine(lineno))?;
            if value < 1 || value as usize > n {
                return Err(GraphParseError::IndexOutOfRange {
                    line: lineno,
                    index: value,
                    n,
                });
            }
            members.insert(value as usize - 1);
        }
    }
    Ok(members.into_iter().collect())
}
