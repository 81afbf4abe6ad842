//! Compiler from positive CNF formulas (positive NAE-SAT instances) to graph
//! instances whose strong cfvc 3-colorability encodes NAE-satisfiability,
//! plus the assignment <-> coloring mappings and a brute-force NAE oracle.
//!
//! The gadget is a chain of six 4-cycles on vertices `h1..h7`, `a1..a6`,
//! `b1..b6`, extended by `a7`, `b7`, one vertex per clause and one per
//! variable: `h1` sees every variable vertex, `a7` and `b7` see every clause
//! vertex, and clause vertices see the vertices of their variables. The `vc`
//! variant ships a vertex cover of size `n + 9` as its modulator; the `dp`
//! variant threads the clause vertices onto a path through `m - 1` connector
//! vertices and ships a modulator of size `n + 21` whose removal leaves
//! exactly that path.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::rng::SplitMix64;
use crate::verify::{verify_strong_cfvc, Coloring, VerifyError};

/// Default variable cap for the exhaustive NAE oracle.
pub const NAE_ORACLE_CAP: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("formula must have at least one variable")]
    ZeroVariables,
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("clause {index}: duplicate variable {var}")]
    DuplicateVariable { index: usize, var: usize },
    #[error("clause {index}: variable {var} out of range for {num_vars} variables")]
    VariableOutOfRange {
        index: usize,
        var: usize,
        num_vars: usize,
    },
    #[error("clause {index} has fewer than two variables: trivially unsatisfiable, reduction refused")]
    SmallClause { index: usize },
    #[error("formula has no clauses")]
    NoClauses,
    #[error("formula has {vars} variables, oracle cap is {cap}")]
    OracleCapExceeded { vars: usize, cap: usize },
    #[error("assignment covers {assignment} variables, formula has {vars}")]
    AssignmentSizeMismatch { assignment: usize, vars: usize },
    #[error("assignment does not NAE-satisfy clause {index}")]
    NotNaeSatisfying { index: usize },
    #[error("coloring must use a palette of exactly 3 colors, got {0}")]
    NotThreeColors(usize),
    #[error("coloring is not a strong cfvc coloring of the instance (proper: {proper}, bad pairs: {bad_pairs})")]
    ColoringFailsVerification { proper: bool, bad_pairs: usize },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(&'static str),
    #[error("invalid reduction sidecar: {0}")]
    BadSidecar(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A CNF formula with only positive literals, interpreted as a positive
/// NAE-SAT instance. Clauses are sorted, duplicate-free variable sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveCnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<usize>>,
}

impl PositiveCnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<usize>>) -> Result<Self, ReduceError> {
        if num_vars == 0 {
            return Err(ReduceError::ZeroVariables);
        }
        let mut normalized = Vec::with_capacity(clauses.len());
        for (index, mut clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(ReduceError::EmptyClause { index });
            }
            clause.sort_unstable();
            if let Some(w) = clause.windows(2).find(|w| w[0] == w[1]) {
                return Err(ReduceError::DuplicateVariable {
                    index,
                    var: w[0],
                });
            }
            if let Some(&var) = clause.iter().find(|&&v| v >= num_vars) {
                return Err(ReduceError::VariableOutOfRange {
                    index,
                    var,
                    num_vars,
                });
            }
            normalized.push(clause);
        }
        Ok(PositiveCnf {
            num_vars,
            clauses: normalized,
        })
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// True iff every clause has at least one true and one false variable.
    pub fn is_nae_satisfied(&self, a: &Assignment) -> bool {
        debug_assert_eq!(a.values.len(), self.num_vars);
        self.clauses.iter().all(|clause| {
            let trues = clause.iter().filter(|&&v| a.values[v]).count();
            trues >= 1 && trues < clause.len()
        })
    }

    /// Variables that occur in no clause (permitted, but the gadget turns
    /// them into degree-1 pendants worth warning about).
    pub fn unused_variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.num_vars];
        for clause in &self.clauses {
            for &v in clause {
                used[v] = true;
            }
        }
        (0..self.num_vars).filter(|&v| !used[v]).collect()
    }
}

/// A total truth assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfParseError {
    #[error("line {0}: expected header `p cnf <n> <m>`")]
    BadHeader(usize),
    #[error("missing header `p cnf <n> <m>`")]
    MissingHeader,
    #[error("line {0}: negative literal, positive formulas only")]
    NegativeLiteral(usize),
    #[error("line {0}: empty clause")]
    EmptyClause(usize),
    #[error("line {line}: variable {var} out of range 1..={n}")]
    VariableOutOfRange { line: usize, var: i64, n: usize },
    #[error("line {line}: duplicate variable {var} in clause")]
    DuplicateVariable { line: usize, var: usize },
    #[error("line {0}: expected integer literal")]
    BadToken(usize),
    #[error("unterminated clause at end of file")]
    UnterminatedClause,
    #[error("header declares {declared} clauses, file has {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

/// Parses DIMACS CNF with positive literals only. Clauses are sequences of
/// positive integers terminated by `0` and may span lines.
pub fn parse_cnf(text: &str) -> Result<PositiveCnf, CnfParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfParseError::BadHeader(lineno));
            }
            let mut tokens = line.split_ascii_whitespace();
            tokens.next();
            let kind = tokens.next();
            let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
            let m = tokens.next().and_then(|t| t.parse::<usize>().ok());
            match (kind, n, m, tokens.next()) {
                (Some("cnf"), Some(n), Some(m), None) if n >= 1 => header = Some((n, m)),
                _ => return Err(CnfParseError::BadHeader(lineno)),
            }
            continue;
        }
        let (n, _) = header.ok_or(CnfParseError::MissingHeader)?;
        for token in line.split_ascii_whitespace() {
            let literal: i64 = token
                .parse()
                .map_err(|_| CnfParseError::BadToken(lineno))?;
            if literal == 0 {
                if current.is_empty() {
                    return Err(CnfParseError::EmptyClause(lineno));
                }
                current.sort_unstable();
                clauses.push(std::mem::take(&mut current));
            } else if literal < 0 {
                return Err(CnfParseError::NegativeLiteral(lineno));
            } else if literal as usize > n {
                return Err(CnfParseError::VariableOutOfRange {
                    line: lineno,
                    var: literal,
                    n,
                });
            } else {
                let var = literal as usize - 1;
                if current.contains(&var) {
                    return Err(CnfParseError::DuplicateVariable {
                        line: lineno,
                        var: literal as usize,
                    });
                }
                current.push(var);
            }
        }
    }

    let (n, m) = header.ok_or(CnfParseError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfParseError::UnterminatedClause);
    }
    if clauses.len() != m {
        return Err(CnfParseError::ClauseCountMismatch {
            declared: m,
            found: clauses.len(),
        });
    }
    Ok(PositiveCnf::new(n, clauses).expect("parser validated the clause list"))
}

/// Canonical DIMACS writer for positive formulas.
pub fn write_cnf(cnf: &PositiveCnf) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.num_clauses()).unwrap();
    for clause in &cnf.clauses {
        for &v in clause {
            write!(out, "{} ", v + 1).unwrap();
        }
        writeln!(out, "0").unwrap();
    }
    out
}

/// Exhaustive 2^n search for the lexicographically least NAE assignment
/// (false < true, variable 0 most significant). `None` if unsatisfiable;
/// any clause of size <= 1 forces that immediately.
pub fn nae_oracle(cnf: &PositiveCnf) -> Result<Option<Assignment>, ReduceError> {
    nae_oracle_capped(cnf, NAE_ORACLE_CAP)
}

pub fn nae_oracle_capped(
    cnf: &PositiveCnf,
    cap: usize,
) -> Result<Option<Assignment>, ReduceError> {
    let n = cnf.num_vars;
    if n > cap {
        return Err(ReduceError::OracleCapExceeded { vars: n, cap });
    }
    if cnf.clauses.iter().any(|c| c.len() <= 1) {
        return Ok(None);
    }
    for pattern in 0u64..(1u64 << n) {
        let values: Vec<bool> = (0..n).map(|i| pattern >> (n - 1 - i) & 1 == 1).collect();
        let a = Assignment { values };
        if cnf.is_nae_satisfied(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Seeded generator for positive formulas: clause sizes uniform in
/// `[min_clause_size, num_vars]`, variables a uniform distinct sample.
pub fn random_positive_cnf(
    num_vars: usize,
    num_clauses: usize,
    min_clause_size: usize,
    seed: u64,
) -> Result<PositiveCnf, ReduceError> {
    if min_clause_size < 2 {
        return Err(ReduceError::InfeasibleParams(
            "minimum clause size must be at least 2",
        ));
    }
    if num_vars < min_clause_size {
        return Err(ReduceError::InfeasibleParams(
            "need at least min_clause_size variables",
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let clauses = (0..num_clauses)
        .map(|_| {
            let size = min_clause_size + rng.below(num_vars - min_clause_size + 1);
            rng.sample_distinct(num_vars, size)
        })
        .collect();
    PositiveCnf::new(num_vars, clauses)
}

/// Which reduction flavor an artifact was built by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Modulator is a vertex cover of size n + 9.
    Vc,
    /// Modulator of size n + 21 whose removal leaves the clause path.
    Dp,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Vc => "vc",
            Variant::Dp => "dp",
        })
    }
}

/// Role of one gadget vertex. `H`, `A`, `B` carry the chain position 1..=7;
/// clause, variable and connector indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    H(usize),
    A(usize),
    B(usize),
    Clause(usize),
    Variable(usize),
    /// Connector j sits between clause j and clause j+1 (dp variant only).
    Connector(usize),
}

impl Role {
    /// Sidecar spelling: `h3`, `a7`, `b1`, `c2` (clause), `v4` (variable),
    /// `c1_2` (connector), all 1-indexed.
    pub fn label(&self) -> String {
        match self {
            Role::H(i) => format!("h{i}"),
            Role::A(i) => format!("a{i}"),
            Role::B(i) => format!("b{i}"),
            Role::Clause(j) => format!("c{}", j + 1),
            Role::Variable(i) => format!("v{}", i + 1),
            Role::Connector(j) => format!("c{}_{}", j + 1, j + 2),
        }
    }

    pub fn parse_label(label: &str) -> Option<Role> {
        let mut chars = label.chars();
        let head = chars.next()?;
        let rest = chars.as_str();
        match head {
            'h' => rest.parse().ok().filter(|i| (1..=7).contains(i)).map(Role::H),
            'a' => rest.parse().ok().filter(|i| (1..=7).contains(i)).map(Role::A),
            'b' => rest.parse().ok().filter(|i| (1..=7).contains(i)).map(Role::B),
            'v' => rest
                .parse()
                .ok()
                .filter(|&i: &usize| i >= 1)
                .map(|i| Role::Variable(i - 1)),
            'c' => match rest.split_once('_') {
                Some((lo, hi)) => {
                    let lo: usize = lo.parse().ok()?;
                    let hi: usize = hi.parse().ok()?;
                    (lo >= 1 && hi == lo + 1).then(|| Role::Connector(lo - 1))
                }
                None => rest
                    .parse()
                    .ok()
                    .filter(|&j: &usize| j >= 1)
                    .map(|j| Role::Clause(j - 1)),
            },
            _ => None,
        }
    }
}

/// A compiled instance: the gadget graph, one role per vertex, and the
/// parameter modulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub graph: Graph,
    pub variant: Variant,
    pub roles: Vec<Role>,
    /// Sorted. In the vc variant this is a vertex cover; in the dp variant
    /// the graph minus the modulator is the clause path.
    pub modulator: Vec<usize>,
}

/// JSON sidecar tying a written gadget graph back to its roles. Vertex ids
/// are 1-indexed, matching the graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSidecar {
    pub variant: String,
    pub roles: BTreeMap<usize, String>,
    pub modulator: Vec<usize>,
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl ReductionArtifact {
    pub fn num_vars(&self) -> usize {
        self.roles
            .iter()
            .filter(|r| matches!(r, Role::Variable(_)))
            .count()
    }

    pub fn num_clauses(&self) -> usize {
        self.roles
            .iter()
            .filter(|r| matches!(r, Role::Clause(_)))
            .count()
    }

    pub fn vertex_with_role(&self, role: Role) -> usize {
        self.roles
            .iter()
            .position(|&r| r == role)
            .expect("artifact invariant: exactly one vertex per role instance")
    }

    /// Clause variable sets, recovered from the graph structure.
    pub fn clause_sets(&self) -> Vec<Vec<usize>> {
        (0..self.num_clauses())
            .map(|j| {
                let c = self.vertex_with_role(Role::Clause(j));
                let mut vars: Vec<usize> = self
                    .graph
                    .neighbors(c)
                    .iter()
                    .filter_map(|&w| match self.roles[w] {
                        Role::Variable(i) => Some(i),
                        _ => None,
                    })
                    .collect();
                vars.sort_unstable();
                vars
            })
            .collect()
    }

    pub fn sidecar(&self) -> ReductionSidecar {
        ReductionSidecar {
            variant: self.variant.to_string(),
            roles: self
                .roles
                .iter()
                .enumerate()
                .map(|(v, r)| (v + 1, r.label()))
                .collect(),
            modulator: self.modulator.iter().map(|&v| v + 1).collect(),
            num_vars: self.num_vars(),
            num_clauses: self.num_clauses(),
        }
    }

    /// Rebuilds an artifact from a graph file plus its sidecar, validating
    /// that the roles form a plausible gadget.
    pub fn from_graph_and_sidecar(
        graph: Graph,
        sidecar: &ReductionSidecar,
    ) -> Result<Self, ReduceError> {
        let variant = match sidecar.variant.as_str() {
            "vc" => Variant::Vc,
            "dp" => Variant::Dp,
            other => {
                return Err(ReduceError::BadSidecar(format!(
                    "unknown variant `{other}`"
                )))
            }
        };
        let n = graph.n();
        let mut roles = vec![None; n];
        for (&vertex, label) in &sidecar.roles {
            if vertex < 1 || vertex > n {
                return Err(ReduceError::BadSidecar(format!(
                    "vertex {vertex} out of range 1..={n}"
                )));
            }
            let role = Role::parse_label(label)
                .ok_or_else(|| ReduceError::BadSidecar(format!("bad role `{label}`")))?;
            if roles[vertex - 1].replace(role).is_some() {
                return Err(ReduceError::BadSidecar(format!(
                    "vertex {vertex} has two roles"
                )));
            }
        }
        let roles: Vec<Role> = roles
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| ReduceError::BadSidecar(format!("vertex {} has no role", v + 1))))
            .collect::<Result<_, _>>()?;

        // Exactly one vertex per expected role instance.
        let m = sidecar.num_clauses;
        let vars = sidecar.num_vars;
        let connectors = match variant {
            Variant::Vc => 0,
            Variant::Dp => m.saturating_sub(1),
        };
        let mut expected: Vec<Role> = Vec::new();
        for i in 1..=7 {
            expected.extend([Role::H(i), Role::A(i), Role::B(i)]);
        }
        expected.extend((0..m).map(Role::Clause));
        expected.extend((0..vars).map(Role::Variable));
        expected.extend((0..connectors).map(Role::Connector));
        if expected.len() != n {
            return Err(ReduceError::BadSidecar(format!(
                "expected {} vertices for this variant, graph has {n}",
                expected.len()
            )));
        }
        for role in expected {
            if roles.iter().filter(|&&r| r == role).count() != 1 {
                return Err(ReduceError::BadSidecar(format!(
                    "role {} must occur exactly once",
                    role.label()
                )));
            }
        }

        let mut modulator: Vec<usize> = Vec::with_capacity(sidecar.modulator.len());
        for &v in &sidecar.modulator {
            if v < 1 || v > n {
                return Err(ReduceError::BadSidecar(format!(
                    "modulator vertex {v} out of range"
                )));
            }
            modulator.push(v - 1);
        }
        modulator.sort_unstable();
        modulator.dedup();

        let art = ReductionArtifact {
            graph,
            variant,
            roles,
            modulator,
        };
        art.validate_gadget_structure()?;
        Ok(art)
    }

    /// The assignment extraction guarantee depends on the graph actually
    /// being the gadget the roles claim; check the non-formula edges and the
    /// total edge count so mislabeled sidecars are rejected, not translated
    /// into garbage assignments.
    fn validate_gadget_structure(&self) -> Result<(), ReduceError> {
        let bad = |msg: String| Err(ReduceError::BadSidecar(msg));
        let edge = |a: usize, b: usize| self.graph.has_edge(a, b);
        let h: Vec<usize> = (1..=7).map(|i| self.vertex_with_role(Role::H(i))).collect();
        let a: Vec<usize> = (1..=7).map(|i| self.vertex_with_role(Role::A(i))).collect();
        let b: Vec<usize> = (1..=7).map(|i| self.vertex_with_role(Role::B(i))).collect();
        for i in 0..6 {
            if !(edge(h[i], a[i]) && edge(a[i], h[i + 1]) && edge(h[i + 1], b[i]) && edge(b[i], h[i]))
            {
                return bad(format!("chain edges around position {} missing", i + 1));
            }
        }
        if !edge(h[6], a[6]) || !edge(h[6], b[6]) {
            return bad("h7 must see a7 and b7".into());
        }
        let m = self.num_clauses();
        let vars = self.num_vars();
        for j in 0..m {
            let c = self.vertex_with_role(Role::Clause(j));
            if !edge(a[6], c) || !edge(b[6], c) {
                return bad(format!("clause {} must see a7 and b7", j + 1));
            }
        }
        for i in 0..vars {
            let v = self.vertex_with_role(Role::Variable(i));
            if !edge(h[0], v) {
                return bad(format!("variable {} must see h1", i + 1));
            }
        }
        let mut expected_edges = 26 + 2 * m + vars;
        expected_edges += self.clause_sets().iter().map(Vec::len).sum::<usize>();
        if self.variant == Variant::Dp {
            for j in 0..m.saturating_sub(1) {
                let conn = self.vertex_with_role(Role::Connector(j));
                let prev = self.vertex_with_role(Role::Clause(j));
                let next = self.vertex_with_role(Role::Clause(j + 1));
                if self.graph.degree(conn) != 2 || !edge(conn, prev) || !edge(conn, next) {
                    return bad(format!("connector {} must join clauses {} and {}", j + 1, j + 1, j + 2));
                }
            }
            expected_edges += 2 * m.saturating_sub(1);
        }
        if self.graph.num_edges() != expected_edges {
            return bad(format!(
                "graph has {} edges, the declared gadget implies {expected_edges}",
                self.graph.num_edges()
            ));
        }
        Ok(())
    }
}

fn check_buildable(cnf: &PositiveCnf) -> Result<(), ReduceError> {
    if cnf.clauses.is_empty() {
        return Err(ReduceError::NoClauses);
    }
    if let Some(index) = cnf.clauses.iter().position(|c| c.len() < 2) {
        return Err(ReduceError::SmallClause { index });
    }
    Ok(())
}

// Fixed vertex layout shared by both variants, so instances are
// byte-reproducible: h1..h7, a1..a7, b1..b7, clause vertices in input order,
// variable vertices in index order, then connectors.
struct Layout {
    num_vars: usize,
    num_clauses: usize,
}

impl Layout {
    fn h(&self, i: usize) -> usize {
        i - 1
    }
    fn a(&self, i: usize) -> usize {
        6 + i
    }
    fn b(&self, i: usize) -> usize {
        13 + i
    }
    fn clause(&self, j: usize) -> usize {
        21 + j
    }
    fn var(&self, i: usize) -> usize {
        21 + self.num_clauses + i
    }
    fn connector(&self, j: usize) -> usize {
        21 + self.num_clauses + self.num_vars + j
    }
}

fn build(cnf: &PositiveCnf, variant: Variant) -> Result<ReductionArtifact, ReduceError> {
    check_buildable(cnf)?;
    let layout = Layout {
        num_vars: cnf.num_vars,
        num_clauses: cnf.num_clauses(),
    };
    let m = layout.num_clauses;
    let total = match variant {
        Variant::Vc => 21 + m + cnf.num_vars,
        Variant::Dp => 21 + m + cnf.num_vars + (m - 1),
    };

    let mut edges = Vec::new();
    for i in 1..=6 {
        edges.push((layout.h(i), layout.a(i)));
        edges.push((layout.a(i), layout.h(i + 1)));
        edges.push((layout.h(i + 1), layout.b(i)));
        edges.push((layout.b(i), layout.h(i)));
    }
    edges.push((layout.h(7), layout.a(7)));
    edges.push((layout.h(7), layout.b(7)));
    for (j, clause) in cnf.clauses.iter().enumerate() {
        for &v in clause {
            edges.push((layout.clause(j), layout.var(v)));
        }
        edges.push((layout.a(7), layout.clause(j)));
        edges.push((layout.b(7), layout.clause(j)));
    }
    for i in 0..cnf.num_vars {
        edges.push((layout.h(1), layout.var(i)));
    }
    if variant == Variant::Dp {
        for j in 0..m - 1 {
            edges.push((layout.clause(j), layout.connector(j)));
            edges.push((layout.connector(j), layout.clause(j + 1)));
        }
    }

    let mut roles = Vec::with_capacity(total);
    roles.extend((1..=7).map(Role::H));
    roles.extend((1..=7).map(Role::A));
    roles.extend((1..=7).map(Role::B));
    roles.extend((0..m).map(Role::Clause));
    roles.extend((0..cnf.num_vars).map(Role::Variable));
    if variant == Variant::Dp {
        roles.extend((0..m - 1).map(Role::Connector));
    }

    let mut modulator: Vec<usize> = match variant {
        Variant::Vc => (1..=7)
            .map(|i| layout.h(i))
            .chain([layout.a(7), layout.b(7)])
            .chain((0..cnf.num_vars).map(|i| layout.var(i)))
            .collect(),
        Variant::Dp => (0..=20)
            .chain((0..cnf.num_vars).map(|i| layout.var(i)))
            .collect(),
    };
    modulator.sort_unstable();

    let graph = Graph::from_edges(total, edges).expect("gadget edges are valid by construction");
    Ok(ReductionArtifact {
        graph,
        variant,
        roles,
        modulator,
    })
}

/// Compiles a positive formula into the vertex-cover-modulator instance:
/// `n + m + 21` vertices, bipartite and connected, with the variable
/// vertices, `h1..h7`, `a7` and `b7` forming a vertex cover of size `n + 9`.
///
/// Clauses of size <= 1 are refused: such formulas are trivially
/// unsatisfiable and excluded before construction.
pub fn build_reduction_vc(cnf: &PositiveCnf) -> Result<ReductionArtifact, ReduceError> {
    build(cnf, Variant::Vc)
}

/// Like [`build_reduction_vc`] plus `m - 1` connector vertices threading the
/// clause vertices onto a path: `n + 2m + 20` vertices with a modulator of
/// size `n + 21` whose removal leaves exactly that path.
pub fn build_reduction_dp(cnf: &PositiveCnf) -> Result<ReductionArtifact, ReduceError> {
    build(cnf, Variant::Dp)
}

/// Turns an NAE assignment into the canonical strong cfvc 3-coloring of the
/// instance: true variables get color 1, false get 0, clause and `h` vertices
/// get 2, `a` vertices 0, `b` vertices 1, connectors 0.
pub fn assignment_to_coloring(
    art: &ReductionArtifact,
    a: &Assignment,
) -> Result<Coloring, ReduceError> {
    let vars = art.num_vars();
    if a.values.len() != vars {
        return Err(ReduceError::AssignmentSizeMismatch {
            assignment: a.values.len(),
            vars,
        });
    }
    // The forward guarantee only holds for NAE assignments; reject others.
    for (index, clause) in art.clause_sets().iter().enumerate() {
        let trues = clause.iter().filter(|&&v| a.values[v]).count();
        if trues == 0 || trues == clause.len() {
            return Err(ReduceError::NotNaeSatisfying { index });
        }
    }
    let assignment = art
        .roles
        .iter()
        .map(|role| match role {
            Role::H(_) | Role::Clause(_) => 2,
            Role::A(_) | Role::Connector(_) => 0,
            Role::B(_) => 1,
            Role::Variable(i) => usize::from(a.values[*i]),
        })
        .collect();
    Ok(Coloring { k: 3, assignment })
}

/// Extracts an NAE assignment from any strong cfvc 3-coloring of the
/// instance. The colors are first normalized so `h1` carries the canonical
/// color 2 and the remaining two colors map to 0 and 1 in ascending order;
/// variables colored 1 become true. NAE-satisfaction is complement-invariant,
/// so either orientation of the two non-`h1` colors is sound.
pub fn coloring_to_assignment(
    art: &ReductionArtifact,
    f: &Coloring,
) -> Result<Assignment, ReduceError> {
    if f.k != 3 {
        return Err(ReduceError::NotThreeColors(f.k));
    }
    let report = verify_strong_cfvc(&art.graph, f)?;
    if !report.is_strong_cfvc() {
        return Err(ReduceError::ColoringFailsVerification {
            proper: report.proper,
            bad_pairs: report.bad_pairs.len(),
        });
    }
    let h1_color = f.assignment[art.vertex_with_role(Role::H(1))];
    let mut perm = [0usize; 3];
    perm[h1_color] = 2;
    let mut next = 0;
    for c in 0..3 {
        if c != h1_color {
            perm[c] = next;
            next += 1;
        }
    }
    let values = (0..art.num_vars())
        .map(|i| {
            let c = perm[f.assignment[art.vertex_with_role(Role::Variable(i))]];
            debug_assert!(c < 2, "variable vertices are adjacent to h1");
            c == 1
        })
        .collect();
    Ok(Assignment { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sample_formula;
    use crate::graph::{diameter, is_connected};

    #[test]
    fn parse_minimal() {
        let cnf = parse_cnf("p cnf 2 1\n1 2 0\n").unwrap();
        assert_eq!(cnf.num_vars, 2);
        assert_eq!(cnf.clauses, vec![vec![0, 1]]);
    }

    #[test]
    fn parse_rejects_negative_literal() {
        assert_eq!(
            parse_cnf("p cnf 2 1\n1 -2 0\n"),
            Err(CnfParseError::NegativeLiteral(2))
        );
    }

    #[test]
    fn parse_sample_formula() {
        let text = "c sample\np cnf 6 4\n1 2 4 0\n3 5 0\n3 4 6 0\n2 4 5 6 0\n";
        let cnf = parse_cnf(text).unwrap();
        assert_eq!(cnf, sample_formula());
        assert_eq!(parse_cnf(&write_cnf(&cnf)).unwrap(), cnf);
    }

    #[test]
    fn parse_error_cases() {
        assert_eq!(parse_cnf("1 2 0\n"), Err(CnfParseError::MissingHeader));
        assert_eq!(
            parse_cnf("p cnf 2 1\n0\n"),
            Err(CnfParseError::EmptyClause(2))
        );
        assert_eq!(
            parse_cnf("p cnf 2 1\n1 3 0\n"),
            Err(CnfParseError::VariableOutOfRange {
                line: 2,
                var: 3,
                n: 2
            })
        );
        assert_eq!(
            parse_cnf("p cnf 2 1\n1 2\n"),
            Err(CnfParseError::UnterminatedClause)
        );
        assert_eq!(
            parse_cnf("p cnf 2 2\n1 2 0\n"),
            Err(CnfParseError::ClauseCountMismatch {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn nae_oracle_examples() {
        let pair = PositiveCnf::new(2, vec![vec![0, 1]]).unwrap();
        let witness = nae_oracle(&pair).unwrap().unwrap();
        // Lexicographically least: variable 0 false, variable 1 true.
        assert_eq!(witness.values, vec![false, true]);
        assert!(pair.is_nae_satisfied(&witness));

        let unit = PositiveCnf::new(1, vec![vec![0]]).unwrap();
        assert_eq!(nae_oracle(&unit).unwrap(), None);

        // Pairwise-distinct constraints on three variables: 2-coloring a
        // triangle, impossible.
        let triangle =
            PositiveCnf::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(nae_oracle(&triangle).unwrap(), None);
    }

    #[test]
    fn builder_counts() {
        let cnf = sample_formula();
        let vc = build_reduction_vc(&cnf).unwrap();
        assert_eq!(vc.graph.n(), 6 + 4 + 21);
        assert_eq!(vc.modulator.len(), 6 + 9);
        assert!(is_connected(&vc.graph));
        assert_eq!(diameter(&vc.graph).unwrap(), 8);

        let dp = build_reduction_dp(&cnf).unwrap();
        assert_eq!(dp.graph.n(), 6 + 2 * 4 + 20);
        assert_eq!(dp.modulator.len(), 6 + 21);
        assert!(is_connected(&dp.graph));

        let minimal = PositiveCnf::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(build_reduction_vc(&minimal).unwrap().graph.n(), 24);
        // Single clause: no connectors, the clause path is one vertex.
        assert_eq!(build_reduction_dp(&minimal).unwrap().graph.n(), 24);
    }

    #[test]
    fn builder_refuses_small_clauses() {
        let unit = PositiveCnf::new(2, vec![vec![0]]).unwrap();
        assert_eq!(
            build_reduction_vc(&unit),
            Err(ReduceError::SmallClause { index: 0 })
        );
        let empty = PositiveCnf::new(2, vec![]).unwrap();
        assert_eq!(build_reduction_vc(&empty), Err(ReduceError::NoClauses));
    }

    #[test]
    fn clause_sets_roundtrip_through_graph() {
        let cnf = sample_formula();
        for art in [build_reduction_vc(&cnf).unwrap(), build_reduction_dp(&cnf).unwrap()] {
            assert_eq!(art.clause_sets(), cnf.clauses);
            assert_eq!(art.num_vars(), 6);
            assert_eq!(art.num_clauses(), 4);
        }
    }

    #[test]
    fn forward_coloring_verifies_on_sample() {
        let cnf = sample_formula();
        // u=T v=F w=T x=F y=F z=T
        let a = Assignment {
            values: vec![true, false, true, false, false, true],
        };
        assert!(cnf.is_nae_satisfied(&a));
        for art in [build_reduction_vc(&cnf).unwrap(), build_reduction_dp(&cnf).unwrap()] {
            let f = assignment_to_coloring(&art, &a).unwrap();
            let report = verify_strong_cfvc(&art.graph, &f).unwrap();
            assert!(report.is_strong_cfvc(), "{:?}", art.variant);
        }
    }

    #[test]
    fn forward_rejects_non_nae() {
        let cnf = PositiveCnf::new(2, vec![vec![0, 1]]).unwrap();
        let art = build_reduction_vc(&cnf).unwrap();
        let bad = Assignment {
            values: vec![true, true],
        };
        assert_eq!(
            assignment_to_coloring(&art, &bad),
            Err(ReduceError::NotNaeSatisfying { index: 0 })
        );
    }

    #[test]
    fn backward_recovers_assignment() {
        let cnf = sample_formula();
        let art = build_reduction_vc(&cnf).unwrap();
        let a = Assignment {
            values: vec![true, false, true, false, false, true],
        };
        let f = assignment_to_coloring(&art, &a).unwrap();
        let recovered = coloring_to_assignment(&art, &f).unwrap();
        // h1 already carries color 2, so the identity normalization applies.
        assert_eq!(recovered, a);

        // A 3-cycle of the colors still yields an NAE-satisfying assignment.
        let rotated = Coloring {
            k: 3,
            assignment: f.assignment.iter().map(|&c| (c + 1) % 3).collect(),
        };
        let from_rotated = coloring_to_assignment(&art, &rotated).unwrap();
        assert!(cnf.is_nae_satisfied(&from_rotated));
    }

    #[test]
    fn backward_rejects_bad_colorings() {
        let cnf = sample_formula();
        let art = build_reduction_vc(&cnf).unwrap();
        let all_zero = Coloring {
            k: 3,
            assignment: vec![0; art.graph.n()],
        };
        assert!(matches!(
            coloring_to_assignment(&art, &all_zero),
            Err(ReduceError::ColoringFailsVerification { proper: false, .. })
        ));
        let wrong_k = Coloring {
            k: 4,
            assignment: vec![0; art.graph.n()],
        };
        assert_eq!(
            coloring_to_assignment(&art, &wrong_k),
            Err(ReduceError::NotThreeColors(4))
        );
    }

    #[test]
    fn random_cnf_is_deterministic() {
        let forced = random_positive_cnf(2, 1, 2, 1).unwrap();
        assert_eq!(forced.clauses, vec![vec![0, 1]]);

        let a = random_positive_cnf(5, 4, 2, 99).unwrap();
        let b = random_positive_cnf(5, 4, 2, 99).unwrap();
        assert_eq!(a, b);

        let c = random_positive_cnf(3, 3, 2, 7).unwrap();
        assert_eq!(c.num_clauses(), 3);
        assert!(c.clauses.iter().all(|cl| (2..=3).contains(&cl.len())));

        assert!(random_positive_cnf(1, 1, 2, 0).is_err());
        assert!(random_positive_cnf(4, 1, 1, 0).is_err());
    }

    #[test]
    fn sidecar_roundtrip() {
        let cnf = sample_formula();
        for art in [build_reduction_vc(&cnf).unwrap(), build_reduction_dp(&cnf).unwrap()] {
            let sidecar = art.sidecar();
            let json = serde_json::to_string(&sidecar).unwrap();
            let parsed: ReductionSidecar = serde_json::from_str(&json).unwrap();
            let rebuilt =
                ReductionArtifact::from_graph_and_sidecar(art.graph.clone(), &parsed).unwrap();
            assert_eq!(rebuilt, art);
        }
    }

    #[test]
    fn sidecar_rejects_garbage() {
        let cnf = sample_formula();
        let art = build_reduction_vc(&cnf).unwrap();
        let mut sidecar = art.sidecar();
        sidecar.roles.insert(1, "nonsense".into());
        assert!(matches!(
            ReductionArtifact::from_graph_and_sidecar(art.graph.clone(), &sidecar),
            Err(ReduceError::BadSidecar(_))
        ));
    }

    #[test]
    fn sidecar_rejects_mislabeled_structure() {
        let cnf = sample_formula();
        let art = build_reduction_vc(&cnf).unwrap();
        // Swap the h1 label with a variable label: the roles are still a
        // complete set, but the edges no longer match the claimed gadget.
        let mut sidecar = art.sidecar();
        let h1 = art.vertex_with_role(Role::H(1)) + 1;
        let v1 = art.vertex_with_role(Role::Variable(0)) + 1;
        sidecar.roles.insert(h1, "v1".into());
        sidecar.roles.insert(v1, "h1".into());
        assert!(matches!(
            ReductionArtifact::from_graph_and_sidecar(art.graph.clone(), &sidecar),
            Err(ReduceError::BadSidecar(_))
        ));
        // Empty and multi-byte labels are rejected, not panicked on.
        assert_eq!(Role::parse_label(""), None);
        assert_eq!(Role::parse_label("é1"), None);
        assert_eq!(Role::parse_label("c0"), None);
        assert_eq!(Role::parse_label("c2_4"), None);
    }

    #[test]
    fn unused_variables_are_reported() {
        let cnf = PositiveCnf::new(4, vec![vec![0, 2]]).unwrap();
        assert_eq!(cnf.unused_variables(), vec![1, 3]);
        assert!(sample_formula().unused_variables().is_empty());
    }
}
