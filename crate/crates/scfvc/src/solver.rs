//! Solvers for strong cfvc k-colorability: an exact exponential search over
//! proper colorings, the vertex-cover-parameterized pipeline with false-twin
//! kernelization and certificate lift-back, and closed-form special cases.
//!
//! The property is not monotone under vertex deletion, so the search never
//! prunes on partial colorings: only complete proper colorings are verified.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::graph::{
    greedy_vertex_cover, is_complete_bipartite, is_connected, false_twin_classes, Graph,
    GraphError, VertexCover,
};
use crate::verify::{verify_strong_cfvc, Coloring, Verifier};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("number of colors must be at least 1")]
    ZeroColors,
    #[error("invalid vertex cover: {0}")]
    InvalidCover(GraphError),
    #[error("kernel trace mismatch: {0}")]
    TraceMismatch(&'static str),
}

/// Knobs for the exponential search.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Cap on explored search nodes; exceeding it yields an explicit
    /// budget-exhausted outcome, never a wrong answer.
    pub node_budget: Option<u64>,
    /// Canonicalize color classes: vertex 0 takes color 0 and a new color may
    /// only be introduced as the smallest unused one. Sound because the
    /// property is invariant under color permutation.
    pub symmetry_breaking: bool,
    /// Stop verifying a candidate at its first bad pair.
    pub fast_fail_verify: bool,
    /// Explore top-level search branches on multiple threads. The decision is
    /// unchanged; the certificate may be any valid one.
    pub parallel: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            node_budget: None,
            symmetry_breaking: true,
            fast_fail_verify: true,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    BudgetExhausted,
}

/// Result of a solver run. A certificate is present exactly on `Yes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub decision: Decision,
    pub certificate: Option<Coloring>,
    pub nodes_explored: u64,
}

impl SolveOutcome {
    fn yes(certificate: Coloring, nodes: u64) -> Self {
        SolveOutcome {
            decision: Decision::Yes,
            certificate: Some(certificate),
            nodes_explored: nodes,
        }
    }

    /// Text form: `result <yes|no|budget>`, the certificate coloring block if
    /// present, then `nodes <count>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let word = match self.decision {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::BudgetExhausted => "budget",
        };
        writeln!(out, "result {word}").unwrap();
        if let Some(cert) = &self.certificate {
            out.push_str(&crate::verify::write_coloring(cert));
        }
        writeln!(out, "nodes {}", self.nodes_explored).unwrap();
        out
    }
}

/// Record of twin-class deletions, enough to replay a kernel coloring back
/// onto the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTrace {
    /// `(removed vertex, surviving twin-class representative)` in original
    /// indexing, in removal order.
    pub removals: Vec<(usize, usize)>,
    /// Original vertex -> kernel vertex; `None` for removed vertices.
    pub index_map: Vec<Option<usize>>,
}

impl KernelTrace {
    pub fn is_identity(&self) -> bool {
        self.removals.is_empty()
    }

    /// Text form: one `rm <removed> <representative>` line per removal,
    /// 1-indexed.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(removed, rep) in &self.removals {
            writeln!(out, "rm {} {}", removed + 1, rep + 1).unwrap();
        }
        out
    }
}

/// `svcfc(P_n) = ceil(log2(n + 1))` for the n-vertex path.
pub fn path_svcfc_closed_form(n: usize) -> usize {
    assert!(n >= 1, "paths have at least one vertex");
    let m = n + 1;
    let floor = m.ilog2() as usize;
    if m.is_power_of_two() {
        floor
    } else {
        floor + 1
    }
}

struct SearchSpace<'a> {
    graph: &'a Graph,
    k: usize,
    /// Neighbors with a smaller index, per vertex.
    earlier: Vec<Vec<usize>>,
    verifier: Verifier<'a>,
    symmetry: bool,
    fast_fail: bool,
    nodes: AtomicU64,
    budget: Option<u64>,
    stop: AtomicBool,
}

enum SearchStatus {
    Found(Coloring),
    Exhausted,
    Budget,
    Stopped,
}

struct Worker<'s, 'a> {
    space: &'s SearchSpace<'a>,
    assignment: Vec<usize>,
    scratch: Coloring,
}

impl<'s, 'a> Worker<'s, 'a> {
    fn new(space: &'s SearchSpace<'a>) -> Self {
        let n = space.graph.n();
        Worker {
            space,
            assignment: vec![0; n],
            scratch: Coloring {
                k: space.k,
                assignment: vec![0; n],
            },
        }
    }

    /// Extends the partial coloring on vertices `0..v` (with `used` colors in
    /// play) to complete proper colorings, verifying each.
    fn dfs(&mut self, v: usize, used: usize) -> SearchStatus {
        let space = self.space;
        if v == space.graph.n() {
            self.scratch.assignment.copy_from_slice(&self.assignment);
            let ok = if space.fast_fail {
                space.verifier.accepts(&self.scratch)
            } else {
                space.verifier.report(&self.scratch).map(|r| r.is_strong_cfvc())
            }
            .expect("search candidates match the verifier's graph");
            return if ok {
                SearchStatus::Found(self.scratch.clone())
            } else {
                SearchStatus::Exhausted
            };
        }
        let limit = if space.symmetry {
            used.min(space.k - 1)
        } else {
            space.k - 1
        };
        for c in 0..=limit {
            if self.space.earlier[v]
                .iter()
                .any(|&w| self.assignment[w] == c)
            {
                continue;
            }
            if space.stop.load(Ordering::Relaxed) {
                return SearchStatus::Stopped;
            }
            let seen = space.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(b) = space.budget {
                if seen > b {
                    return SearchStatus::Budget;
                }
            }
            self.assignment[v] = c;
            match self.dfs(v + 1, used.max(c + 1)) {
                SearchStatus::Exhausted => {}
                done => return done,
            }
        }
        SearchStatus::Exhausted
    }
}

/// Decides whether a connected graph is strongly cfvc k-colorable by
/// backtracking over proper colorings and verifying every complete one.
pub fn solve_k(g: &Graph, k: usize, cfg: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    let earlier = (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| w < v)
                .collect()
        })
        .collect();
    let space = SearchSpace {
        graph: g,
        k,
        earlier,
        verifier: Verifier::new(g).expect("connectivity checked above"),
        symmetry: cfg.symmetry_breaking,
        fast_fail: cfg.fast_fail_verify,
        nodes: AtomicU64::new(0),
        budget: cfg.node_budget,
        stop: AtomicBool::new(false),
    };

    let status = if cfg.parallel {
        run_parallel(&space)
    } else {
        Worker::new(&space).dfs(0, 0)
    };
    let nodes = space.nodes.load(Ordering::Relaxed);
    Ok(match status {
        SearchStatus::Found(cert) => SolveOutcome::yes(cert, nodes),
        SearchStatus::Exhausted => SolveOutcome {
            decision: Decision::No,
            certificate: None,
            nodes_explored: nodes,
        },
        SearchStatus::Budget => SolveOutcome {
            decision: Decision::BudgetExhausted,
            certificate: None,
            nodes_explored: nodes,
        },
        SearchStatus::Stopped => unreachable!("stop flag is only set by the parallel runner"),
    })
}

/// Expands the search tree to a frontier of prefixes, then lets a thread pool
/// finish the subtrees. Any found certificate wins; budget beats no.
fn run_parallel(space: &SearchSpace<'_>) -> SearchStatus {
    let threads = std::thread::available_parallelism()
        .map(|t| t.get())
        .unwrap_or(1);
    let n = space.graph.n();

    // Frontier of (partial assignment, used colors) pairs.
    let mut frontier: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    let mut depth = 0;
    while depth < n && frontier.len() < threads * 8 {
        let mut next = Vec::new();
        for (prefix, used) in &frontier {
            let limit = if space.symmetry {
                (*used).min(space.k - 1)
            } else {
                space.k - 1
            };
            for c in 0..=limit {
                if space.earlier[depth].iter().any(|&w| prefix[w] == c) {
                    continue;
                }
                space.nodes.fetch_add(1, Ordering::Relaxed);
                let mut ext = prefix.clone();
                ext.push(c);
                next.push((ext, (*used).max(c + 1)));
            }
        }
        frontier = next;
        depth += 1;
        if frontier.is_empty() {
            return SearchStatus::Exhausted;
        }
    }
    if let Some(b) = space.budget {
        if space.nodes.load(Ordering::Relaxed) > b {
            return SearchStatus::Budget;
        }
    }

    let queue = AtomicUsize::new(0);
    let found: Mutex<Option<Coloring>> = Mutex::new(None);
    let budget_hit = AtomicBool::new(false);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(frontier.len()) {
            scope.spawn(|| {
                let mut worker = Worker::new(space);
                loop {
                    let i = queue.fetch_add(1, Ordering::Relaxed);
                    if i >= frontier.len() || space.stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let (prefix, used) = &frontier[i];
                    worker.assignment[..depth].copy_from_slice(prefix);
                    match worker.dfs(depth, *used) {
                        SearchStatus::Found(cert) => {
                            *found.lock().unwrap() = Some(cert);
                            space.stop.store(true, Ordering::Relaxed);
                            break;
                        }
                        SearchStatus::Budget => {
                            budget_hit.store(true, Ordering::Relaxed);
                            space.stop.store(true, Ordering::Relaxed);
                            break;
                        }
                        SearchStatus::Exhausted | SearchStatus::Stopped => {}
                    }
                }
            });
        }
    });

    if let Some(cert) = found.into_inner().unwrap() {
        SearchStatus::Found(cert)
    } else if budget_hit.load(Ordering::Relaxed) {
        SearchStatus::Budget
    } else {
        SearchStatus::Exhausted
    }
}

/// The (|X|+1)-coloring that gives each cover vertex a private color and all
/// remaining vertices one shared color. Always a strong cfvc coloring: any
/// shortest path of length >= 2 passes through a privately colored vertex.
pub fn trivial_cover_coloring(g: &Graph, x: &VertexCover) -> Result<Coloring, SolveError> {
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    x.validate(g).map_err(SolveError::InvalidCover)?;
    let k = x.len() + 1;
    let mut assignment = vec![x.len(); g.n()];
    for (color, &v) in x.members.iter().enumerate() {
        assignment[v] = color;
    }
    Ok(Coloring { k, assignment })
}

/// Applies the twin reduction rule exhaustively: every false-twin class
/// outside the cover keeps at most `k + 1` members (highest indices removed
/// first). The result has at most `|X| + (k+1) * 2^|X|` vertices and the same
/// answer for strong cfvc k-colorability.
pub fn kernelize(
    g: &Graph,
    k: usize,
    x: &VertexCover,
) -> Result<(Graph, KernelTrace), SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    x.validate(g).map_err(SolveError::InvalidCover)?;

    let independent: Vec<usize> = (0..g.n()).filter(|&v| !x.contains(v)).collect();
    let partition = false_twin_classes(g, &independent);
    let mut removed = std::collections::BTreeSet::new();
    let mut removals = Vec::new();
    for class in &partition.classes {
        if class.len() > k + 1 {
            let representative = class[0];
            for &v in class[k + 1..].iter().rev() {
                removals.push((v, representative));
                removed.insert(v);
            }
        }
    }
    let (kernel, index_map) = g.delete_vertices(&removed);
    Ok((
        kernel,
        KernelTrace {
            removals,
            index_map,
        },
    ))
}

/// Replays the removals in reverse, giving each removed vertex the color of
/// its surviving representative. Inverse of `kernelize` on certificates.
pub fn lift_coloring(
    trace: &KernelTrace,
    kernel_coloring: &Coloring,
) -> Result<Coloring, SolveError> {
    let n = trace.index_map.len();
    let survivors = trace.index_map.iter().flatten().count();
    if kernel_coloring.assignment.len() != survivors {
        return Err(SolveError::TraceMismatch(
            "kernel coloring size differs from the trace's survivor count",
        ));
    }
    const UNSET: usize = usize::MAX;
    let mut assignment = vec![UNSET; n];
    for (orig, slot) in trace.index_map.iter().enumerate() {
        if let Some(kv) = slot {
            assignment[orig] = kernel_coloring.assignment[*kv];
        }
    }
    for &(removed, rep) in trace.removals.iter().rev() {
        if removed >= n || rep >= n || assignment[rep] == UNSET {
            return Err(SolveError::TraceMismatch(
                "removal entry references an unknown vertex",
            ));
        }
        if assignment[removed] != UNSET {
            return Err(SolveError::TraceMismatch(
                "removed vertex already colored",
            ));
        }
        assignment[removed] = assignment[rep];
    }
    if assignment.contains(&UNSET) {
        return Err(SolveError::TraceMismatch(
            "trace does not account for every vertex",
        ));
    }
    Ok(Coloring {
        k: kernel_coloring.k,
        assignment,
    })
}

/// Vertex-cover-parameterized pipeline: trivial coloring when `k > |X|`,
/// otherwise kernelize, solve the kernel, and lift the certificate back.
pub fn solve_fpt(
    g: &Graph,
    k: usize,
    x: Option<&VertexCover>,
    cfg: &SolveConfig,
) -> Result<SolveOutcome, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    let cover = match x {
        Some(c) => c.clone(),
        None => greedy_vertex_cover(g),
    };
    cover.validate(g).map_err(SolveError::InvalidCover)?;

    if k > cover.len() {
        let mut cert = trivial_cover_coloring(g, &cover)?;
        cert.k = k; // the recipe uses |X|+1 <= k colors
        return Ok(SolveOutcome::yes(cert, 0));
    }

    let (kernel, trace) = kernelize(g, k, &cover)?;
    let outcome = solve_k(&kernel, k, cfg)?;
    match outcome.decision {
        Decision::Yes => {
            let kernel_cert = outcome
                .certificate
                .expect("yes outcomes carry a certificate");
            let lifted = lift_coloring(&trace, &kernel_cert)?;
            let report = verify_strong_cfvc(g, &lifted)
                .expect("lifted coloring matches the original graph");
            assert!(
                report.is_strong_cfvc(),
                "twin lift produced an invalid certificate"
            );
            Ok(SolveOutcome::yes(lifted, outcome.nodes_explored))
        }
        _ => Ok(outcome),
    }
}

/// Computes `svcfc(g)`: the least k admitting a strong cfvc k-coloring.
///
/// Fast paths: a single vertex needs 1 color; complete bipartite graphs need
/// exactly 2. Everything else starts at k = 3 (2-colorability is equivalent
/// to being complete bipartite) and k = n always succeeds, so the loop
/// terminates.
pub fn svcfc_number(g: &Graph, cfg: &SolveConfig) -> Result<SolveOutcome, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if !is_connected(g) {
        return Err(SolveError::Disconnected);
    }
    if g.n() == 1 {
        return Ok(SolveOutcome::yes(
            Coloring {
                k: 1,
                assignment: vec![0],
            },
            0,
        ));
    }
    let bipartition = is_complete_bipartite(g).expect("connected with n >= 2");
    if let Some((_, side_b)) = bipartition {
        let mut assignment = vec![0; g.n()];
        for &v in &side_b {
            assignment[v] = 1;
        }
        return Ok(SolveOutcome::yes(Coloring { k: 2, assignment }, 0));
    }
    let mut total_nodes = 0u64;
    for k in 3..=g.n() {
        let remaining = cfg.node_budget.map(|b| b.saturating_sub(total_nodes));
        if remaining == Some(0) {
            return Ok(SolveOutcome {
                decision: Decision::BudgetExhausted,
                certificate: None,
                nodes_explored: total_nodes,
            });
        }
        let sub_cfg = SolveConfig {
            node_budget: remaining,
            ..cfg.clone()
        };
        let outcome = solve_k(g, k, &sub_cfg)?;
        total_nodes += outcome.nodes_explored;
        match outcome.decision {
            Decision::Yes => {
                return Ok(SolveOutcome {
                    nodes_explored: total_nodes,
                    ..outcome
                })
            }
            Decision::BudgetExhausted => {
                return Ok(SolveOutcome {
                    decision: Decision::BudgetExhausted,
                    certificate: None,
                    nodes_explored: total_nodes,
                })
            }
            Decision::No => {}
        }
    }
    unreachable!("k = n admits the all-distinct coloring");
}
