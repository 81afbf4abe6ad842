//! Deciding whether a coloring is a strong conflict-free vertex-connection
//! (strong cfvc) coloring.
//!
//! A coloring qualifies when it is proper and every pair of distinct vertices
//! is joined by a shortest path on which some color occurs exactly once.
//! Pairs without such a path are *bad pairs*; the verifier reports all of
//! them.
//!
//! The per-pair test runs one reachability pass per color over the BFS
//! shortest-path DAG, tracking how often the color has occurred on a partial
//! path with the count capped at two ("two or more" is absorbing). This costs
//! O(k(n+m)) per source and O(k·n·(n+m)) for a full verification.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{bfs_dag, is_connected, Graph, ShortestPathDag, UNREACHABLE};

/// Default vertex cap for the exhaustive path-enumeration oracle.
pub const ORACLE_CAP: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("coloring covers {coloring} vertices but the graph has {graph}")]
    SizeMismatch { coloring: usize, graph: usize },
    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} is unreachable from the DAG source")]
    Unreachable(usize),
    #[error("DAG was built from source {dag}, not {requested}")]
    SourceMismatch { dag: usize, requested: usize },
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    OracleCapExceeded { n: usize, cap: usize },
}

/// A total assignment of colors `0..k-1` to the vertices of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub k: usize,
    pub assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self, VerifyError> {
        if let Some(&c) = assignment.iter().find(|&&c| c >= k) {
            return Err(VerifyError::ColorOutOfRange { color: c, k });
        }
        Ok(Coloring { k, assignment })
    }

    fn check_against(&self, g: &Graph) -> Result<(), VerifyError> {
        if self.assignment.len() != g.n() {
            return Err(VerifyError::SizeMismatch {
                coloring: self.assignment.len(),
                graph: g.n(),
            });
        }
        if let Some(&c) = self.assignment.iter().find(|&&c| c >= self.k) {
            return Err(VerifyError::ColorOutOfRange { color: c, k: self.k });
        }
        Ok(())
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub proper: bool,
    /// Unordered pairs `(u, v)` with `u < v` lacking a conflict-free shortest
    /// path, sorted lexicographically. Empty when the scan was skipped
    /// because the coloring is improper.
    pub bad_pairs: Vec<(usize, usize)>,
    pub pairs_checked: usize,
}

impl VerificationReport {
    pub fn is_strong_cfvc(&self) -> bool {
        self.proper && self.bad_pairs.is_empty()
    }

    /// Text form: `proper <bool>` then one `bad <u> <v>` line per pair
    /// (1-indexed).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "proper {}", self.proper).unwrap();
        for &(u, v) in &self.bad_pairs {
            writeln!(out, "bad {} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

/// True iff no edge of `g` is monochromatic under `f`.
pub fn is_proper(g: &Graph, f: &Coloring) -> Result<bool, VerifyError> {
    f.check_against(g)?;
    Ok(g.edges()
        .all(|(u, v)| f.assignment[u] != f.assignment[v]))
}

// Count states are bitmasks: bit 0 = "zero occurrences achievable",
// bit 1 = "exactly one", bit 2 = "two or more".
const ONCE: u8 = 0b010;

#[inline]
fn bump(mask: u8) -> u8 {
    ((mask << 1) & 0b110) | (mask & 0b100)
}

/// Reusable verifier holding the BFS DAGs of a fixed connected graph, so the
/// solvers can test many candidate colorings without rebuilding them.
pub struct Verifier<'a> {
    graph: &'a Graph,
    dags: Vec<ShortestPathDag>,
}

impl<'a> Verifier<'a> {
    pub fn new(graph: &'a Graph) -> Result<Self, VerifyError> {
        if !is_connected(graph) {
            return Err(VerifyError::Disconnected);
        }
        let dags = (0..graph.n()).map(|v| bfs_dag(graph, v)).collect();
        Ok(Verifier { graph, dags })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn dag(&self, source: usize) -> &ShortestPathDag {
        &self.dags[source]
    }

    /// Full report: all bad pairs, sorted.
    pub fn report(&self, f: &Coloring) -> Result<VerificationReport, VerifyError> {
        self.run(f, false)
    }

    /// Fast-fail decision for solver inner loops: stops at the first bad pair.
    pub fn accepts(&self, f: &Coloring) -> Result<bool, VerifyError> {
        Ok(self.run(f, true)?.is_strong_cfvc())
    }

    fn run(&self, f: &Coloring, fast_fail: bool) -> Result<VerificationReport, VerifyError> {
        f.check_against(self.graph)?;
        if !is_proper(self.graph, f)? {
            return Ok(VerificationReport {
                proper: false,
                bad_pairs: Vec::new(),
                pairs_checked: 0,
            });
        }
        let n = self.graph.n();
        let mut bad_pairs = Vec::new();
        let mut pairs_checked = 0;
        let mut ok = vec![false; n];
        let mut reach = vec![0u8; n];
        for u in 0..n {
            if u + 1 == n {
                break; // nothing left to pair with
            }
            let dag = &self.dags[u];
            conflict_free_targets(dag, f, &mut ok, &mut reach);
            for v in (u + 1)..n {
                pairs_checked += 1;
                if !ok[v] {
                    bad_pairs.push((u, v));
                    if fast_fail {
                        return Ok(VerificationReport {
                            proper: true,
                            bad_pairs,
                            pairs_checked,
                        });
                    }
                }
            }
        }
        Ok(VerificationReport {
            proper: true,
            bad_pairs,
            pairs_checked,
        })
    }
}

/// Marks `ok[v] = true` for every `v` joined to the DAG source by a
/// conflict-free shortest path. `reach` is scratch space of size n.
fn conflict_free_targets(dag: &ShortestPathDag, f: &Coloring, ok: &mut [bool], reach: &mut [u8]) {
    for &v in &dag.order {
        ok[v] = false;
    }
    ok[dag.source] = true;
    for c in 0..f.k {
        for &v in &dag.order {
            reach[v] = 0;
        }
        reach[dag.source] = if f.assignment[dag.source] == c { ONCE } else { 0b001 };
        for &x in &dag.order {
            let mask = reach[x];
            if mask == 0 {
                continue;
            }
            for &y in &dag.successors[x] {
                let next = if f.assignment[y] == c { bump(mask) } else { mask };
                reach[y] |= next;
            }
        }
        for &v in &dag.order {
            if reach[v] & ONCE != 0 {
                ok[v] = true;
            }
        }
    }
}

/// Verifies a coloring against a connected graph, reporting every bad pair.
///
/// Improper colorings short-circuit: `proper = false` and no pair scan.
pub fn verify_strong_cfvc(g: &Graph, f: &Coloring) -> Result<VerificationReport, VerifyError> {
    Verifier::new(g)?.report(f)
}

/// Decides whether some shortest path from the DAG source to `v` carries a
/// color exactly once. `u` must be the DAG's source and `v` reachable.
pub fn cf_shortest_path_exists(
    dag: &ShortestPathDag,
    f: &Coloring,
    u: usize,
    v: usize,
) -> Result<bool, VerifyError> {
    if dag.source != u {
        return Err(VerifyError::SourceMismatch {
            dag: dag.source,
            requested: u,
        });
    }
    if f.assignment.len() != dag.dist.len() {
        return Err(VerifyError::SizeMismatch {
            coloring: f.assignment.len(),
            graph: dag.dist.len(),
        });
    }
    if v >= dag.dist.len() || dag.dist[v] == UNREACHABLE {
        return Err(VerifyError::Unreachable(v));
    }
    if u == v {
        return Ok(true); // the one-vertex path carries its color once
    }
    let mut reach = vec![0u8; dag.dist.len()];
    for c in 0..f.k {
        for &w in &dag.order {
            reach[w] = 0;
        }
        reach[u] = if f.assignment[u] == c { ONCE } else { 0b001 };
        for &x in &dag.order {
            if dag.dist[x] >= dag.dist[v] {
                continue;
            }
            let mask = reach[x];
            if mask == 0 {
                continue;
            }
            for &y in &dag.successors[x] {
                let next = if f.assignment[y] == c { bump(mask) } else { mask };
                reach[y] |= next;
            }
        }
        if reach[v] & ONCE != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Independent test oracle: enumerates every shortest `u,v`-path explicitly
/// and checks each for a color occurring exactly once. Exponential in the
/// worst case, hence the vertex cap.
pub fn oracle_cf_path(g: &Graph, f: &Coloring, u: usize, v: usize) -> Result<bool, VerifyError> {
    oracle_cf_path_capped(g, f, u, v, ORACLE_CAP)
}

pub fn oracle_cf_path_capped(
    g: &Graph,
    f: &Coloring,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<bool, VerifyError> {
    if g.n() > cap {
        return Err(VerifyError::OracleCapExceeded { n: g.n(), cap });
    }
    f.check_against(g)?;
    if !is_connected(g) {
        return Err(VerifyError::Disconnected);
    }
    if u == v {
        return Ok(true);
    }
    let dag = bfs_dag(g, u);
    // Restrict the walk to vertices lying on some shortest u,v-path.
    let mut on_path = vec![false; g.n()];
    on_path[v] = true;
    for &x in dag.order.iter().rev() {
        if dag.dist[x] < dag.dist[v] && dag.successors[x].iter().any(|&y| on_path[y]) {
            on_path[x] = true;
        }
    }
    if !on_path[u] {
        return Err(VerifyError::Unreachable(v));
    }
    let mut counts = vec![0usize; f.k];
    counts[f.assignment[u]] += 1;
    let mut path = vec![u];
    Ok(dfs_paths(&dag, f, v, &on_path, &mut path, &mut counts))
}

fn dfs_paths(
    dag: &ShortestPathDag,
    f: &Coloring,
    target: usize,
    on_path: &[bool],
    path: &mut Vec<usize>,
    counts: &mut Vec<usize>,
) -> bool {
    let x = *path.last().unwrap();
    if x == target {
        return counts.contains(&1);
    }
    for &y in &dag.successors[x] {
        if !on_path[y] {
            continue;
        }
        path.push(y);
        counts[f.assignment[y]] += 1;
        let hit = dfs_paths(dag, f, target, on_path, path, counts);
        counts[f.assignment[y]] -= 1;
        path.pop();
        if hit {
            return true;
        }
    }
    false
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringParseError {
    #[error("line {0}: expected header `s cfvc <n> <k>`")]
    BadHeader(usize),
    #[error("missing header `s cfvc <n> <k>`")]
    MissingHeader,
    #[error("line {0}: expected `v <vertex> <color>`")]
    BadVertexLine(usize),
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: color {color} out of range 0..{k}")]
    ColorOutOfRange { line: usize, color: i64, k: usize },
    #[error("line {line}: vertex {vertex} assigned twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("vertex {0} has no color assignment")]
    MissingVertex(usize),
    #[error("line {0}: unrecognized line")]
    UnexpectedLine(usize),
}

/// Parses the coloring format: header `s cfvc <n> <k>`, then `n` lines
/// `v <vertex> <color>` with 1-indexed vertices and 0-indexed colors.
pub fn parse_coloring(text: &str) -> Result<Coloring, ColoringParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut assignment: Vec<Option<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        match tokens.next() {
            Some("s") => {
                if header.is_some() {
                    return Err(ColoringParseError::BadHeader(lineno));
                }
                let kind = tokens.next();
                let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let k = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (kind, n, k, tokens.next()) {
                    (Some("cfvc"), Some(n), Some(k), None) if k >= 1 => {
                        header = Some((n, k));
                        assignment = vec![None; n];
                    }
                    _ => return Err(ColoringParseError::BadHeader(lineno)),
                }
            }
            Some("v") => {
                let (n, k) = header.ok_or(ColoringParseError::MissingHeader)?;
                let vertex: i64 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(ColoringParseError::BadVertexLine(lineno))?;
                let color: i64 = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(ColoringParseError::BadVertexLine(lineno))?;
                if tokens.next().is_some() {
                    return Err(ColoringParseError::BadVertexLine(lineno));
                }
                if vertex < 1 || vertex as usize > n {
                    return Err(ColoringParseError::VertexOutOfRange {
                        line: lineno,
                        vertex,
                        n,
                    });
                }
                if color < 0 || color as usize >= k {
                    return Err(ColoringParseError::ColorOutOfRange {
                        line: lineno,
                        color,
                        k,
                    });
                }
                let slot = &mut assignment[vertex as usize - 1];
                if slot.is_some() {
                    return Err(ColoringParseError::DuplicateVertex {
                        line: lineno,
                        vertex: vertex as usize,
                    });
                }
                *slot = Some(color as usize);
            }
            _ => return Err(ColoringParseError::UnexpectedLine(lineno)),
        }
    }
    let (_, k) = header.ok_or(ColoringParseError::MissingHeader)?;
    let mut values = Vec::with_capacity(assignment.len());
    for (v, slot) in assignment.iter().enumerate() {
        values.push(slot.ok_or(ColoringParseError::MissingVertex(v + 1))?);
    }
    Ok(Coloring {
        k,
        assignment: values,
    })
}

/// Canonical writer for the coloring format.
pub fn write_coloring(f: &Coloring) -> String {
    let mut out = String::new();
    writeln!(out, "s cfvc {} {}", f.assignment.len(), f.k).unwrap();
    for (v, &c) in f.assignment.iter().enumerate() {
        writeln!(out, "v {} {}", v + 1, c).unwrap();
    }
    out
}
