//! Simple undirected graphs and the structural primitives the solvers build on:
//! BFS shortest-path DAGs, false-twin partitions, greedy vertex covers and
//! complete-bipartite recognition.

use std::collections::BTreeSet;

use thiserror::Error;

pub mod format;

pub use format::{parse_graph, parse_vertex_set, write_graph, GraphParseError};

/// Distance sentinel for vertices a BFS did not reach.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("operation requires at least {required} vertices, graph has {n}")]
    TooSmall { required: usize, n: usize },
    #[error("not a vertex cover: edge {0}-{1} has no endpoint in the set")]
    UncoveredEdge(usize, usize),
}

/// An undirected simple graph over vertices `0..n`, stored as sorted
/// adjacency lists. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj })
    }

    /// The path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// The cycle 0-1-...-(n-1)-0. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// Complete bipartite graph: side A is `0..a`, side B is `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("complete bipartite edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Deletes a vertex set, renumbering survivors downward while preserving
    /// relative order. Returns the new graph and the old-index -> new-index
    /// map (`None` for deleted vertices).
    pub fn delete_vertices(&self, removed: &BTreeSet<usize>) -> (Graph, Vec<Option<usize>>) {
        let n = self.n();
        let mut map = vec![None; n];
        let mut next = 0;
        for v in 0..n {
            if !removed.contains(&v) {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut adj = vec![Vec::new(); next];
        for v in 0..n {
            if let Some(nv) = map[v] {
                adj[nv] = self.adj[v].iter().filter_map(|&w| map[w]).collect();
            }
        }
        (Graph { adj }, map)
    }
}

/// BFS shortest-path DAG from a fixed source: exact distances plus, for each
/// vertex, the neighbors that extend a shortest path by one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPathDag {
    pub source: usize,
    /// Distance from the source, `UNREACHABLE` if no path exists.
    pub dist: Vec<usize>,
    /// `successors[x]` holds the neighbors `y` with `dist[y] = dist[x] + 1`.
    pub successors: Vec<Vec<usize>>,
    /// Reachable vertices in BFS order (nondecreasing distance).
    pub order: Vec<usize>,
}

impl ShortestPathDag {
    pub fn eccentricity(&self) -> usize {
        self.order.iter().map(|&v| self.dist[v]).max().unwrap_or(0)
    }
}

/// Breadth-first search from `source`. Panics if `source` is out of range.
pub fn bfs_dag(g: &Graph, source: usize) -> ShortestPathDag {
    let n = g.n();
    assert!(source < n, "bfs source {source} out of range for {n} vertices");
    let mut dist = vec![UNREACHABLE; n];
    let mut order = Vec::with_capacity(n);
    dist[source] = 0;
    order.push(source);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHABLE {
                dist[y] = dist[x] + 1;
                order.push(y);
            }
        }
    }
    // Tight edges only; adjacency is sorted, so successor lists come out sorted.
    let successors = (0..n)
        .map(|x| {
            if dist[x] == UNREACHABLE {
                Vec::new()
            } else {
                g.neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&y| dist[y] != UNREACHABLE && dist[y] == dist[x] + 1)
                    .collect()
            }
        })
        .collect();
    ShortestPathDag {
        source,
        dist,
        successors,
        order,
    }
}

/// True iff the graph is connected. Graphs on 0 or 1 vertices count as
/// connected.
pub fn is_connected(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    bfs_dag(g, 0).order.len() == g.n()
}

/// Maximum distance over all vertex pairs. Errors on disconnected input.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    Ok((0..g.n())
        .map(|v| bfs_dag(g, v).eccentricity())
        .max()
        .unwrap_or(0))
}

/// Minimum eccentricity over all vertices. Errors on disconnected input.
pub fn radius(g: &Graph) -> Result<usize, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    Ok((0..g.n())
        .map(|v| bfs_dag(g, v).eccentricity())
        .min()
        .unwrap_or(0))
}

/// Partition of a vertex subset into classes of false twins (identical open
/// neighborhoods). Classes are ordered by smallest member; members ascend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinClassPartition {
    pub classes: Vec<Vec<usize>>,
}

impl TwinClassPartition {
    /// The class containing `v`, if `v` was in the partitioned subset.
    pub fn class_of(&self, v: usize) -> Option<&[usize]> {
        self.classes
            .iter()
            .find(|c| c.binary_search(&v).is_ok())
            .map(Vec::as_slice)
    }
}

/// Groups `subset` by exact open neighborhood.
pub fn false_twin_classes(g: &Graph, subset: &[usize]) -> TwinClassPartition {
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut buckets: std::collections::HashMap<&[usize], Vec<usize>> =
        std::collections::HashMap::new();
    for &v in &members {
        buckets.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = buckets.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    TwinClassPartition { classes }
}

/// A vertex cover: every edge has at least one endpoint in `members`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    /// Sorted, distinct vertex indices.
    pub members: Vec<usize>,
}

impl VertexCover {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexCover { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Checks that every edge of `g` is covered; returns the first uncovered
    /// edge otherwise.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        if let Some(&v) = self.members.iter().find(|&&v| v >= g.n()) {
            return Err(GraphError::IndexOutOfRange { index: v, n: g.n() });
        }
        for (u, v) in g.edges() {
            if !self.contains(u) && !self.contains(v) {
                return Err(GraphError::UncoveredEdge(u, v));
            }
        }
        Ok(())
    }
}

/// 2-approximate vertex cover: both endpoints of a greedily built maximal
/// matching, scanning edges in lexicographic order.
pub fn greedy_vertex_cover(g: &Graph) -> VertexCover {
    let mut matched = vec![false; g.n()];
    let mut members = Vec::new();
    for (u, v) in g.edges() {
        if !matched[u] && !matched[v] {
            matched[u] = true;
            matched[v] = true;
            members.push(u);
            members.push(v);
        }
    }
    members.sort_unstable();
    VertexCover { members }
}

/// Two sides of a bipartition, each a sorted vertex list.
pub type Bipartition = (Vec<usize>, Vec<usize>);

/// If `g` is a complete bipartite graph, returns its (unique) bipartition
/// with the side containing vertex 0 first; otherwise `None`.
///
/// Errors on disconnected input or fewer than 2 vertices.
pub fn is_complete_bipartite(g: &Graph) -> Result<Option<Bipartition>, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooSmall { required: 2, n });
    }
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let dag = bfs_dag(g, 0);
    let mut side_a = Vec::new();
    let mut side_b = Vec::new();
    for v in 0..n {
        if dag.dist[v] % 2 == 0 {
            side_a.push(v);
        } else {
            side_b.push(v);
        }
    }
    // Both sides independent (no odd cycle) ...
    for (u, v) in g.edges() {
        if dag.dist[u] % 2 == dag.dist[v] % 2 {
            return Ok(None);
        }
    }
    // ... and every cross pair is an edge.
    if g.num_edges() != side_a.len() * side_b.len() {
        return Ok(None);
    }
    Ok(Some((side_a, side_b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::IndexOutOfRange { index: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn bfs_path_distances() {
        let g = Graph::path(4);
        let dag = bfs_dag(&g, 0);
        assert_eq!(dag.dist, vec![0, 1, 2, 3]);
        assert_eq!(dag.successors[0], vec![1]);
        assert_eq!(dag.successors[3], Vec::<usize>::new());
    }

    #[test]
    fn bfs_star_distances() {
        let g = Graph::complete_bipartite(1, 4);
        let dag = bfs_dag(&g, 0);
        assert_eq!(dag.dist, vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&Graph::complete_bipartite(3, 3)), Ok(2));
        for n in 2..8 {
            assert_eq!(diameter(&Graph::path(n)), Ok(n - 1));
        }
        let disconnected = Graph::edgeless(2);
        assert_eq!(diameter(&disconnected), Err(GraphError::Disconnected));
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&Graph::edgeless(0)));
        assert!(is_connected(&Graph::edgeless(1)));
        assert!(!is_connected(&Graph::edgeless(2)));
        assert!(is_connected(&Graph::from_edges(2, [(0, 1)]).unwrap()));
    }

    #[test]
    fn twin_classes_complete_bipartite_side() {
        let g = Graph::complete_bipartite(2, 3);
        let part = false_twin_classes(&g, &[2, 3, 4]);
        assert_eq!(part.classes, vec![vec![2, 3, 4]]);
    }

    #[test]
    fn twin_classes_path_are_singletons() {
        let g = Graph::path(4);
        let part = false_twin_classes(&g, &[0, 1, 2, 3]);
        assert_eq!(part.classes.len(), 4);
        // Independent pairwise check of the same partition.
        for u in 0..4 {
            for v in (u + 1)..4 {
                let same = g.neighbors(u) == g.neighbors(v);
                let together = part.class_of(u).unwrap().contains(&v);
                assert_eq!(same, together, "pair ({u},{v})");
            }
        }
    }

    #[test]
    fn greedy_cover_examples() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(greedy_vertex_cover(&k2).members, vec![0, 1]);
        let star = Graph::complete_bipartite(1, 4);
        assert_eq!(greedy_vertex_cover(&star).members, vec![0, 1]);
        let single = Graph::edgeless(1);
        assert!(greedy_vertex_cover(&single).members.is_empty());
    }

    #[test]
    fn complete_bipartite_recognition() {
        let g = Graph::complete_bipartite(2, 3);
        let (a, b) = is_complete_bipartite(&g).unwrap().unwrap();
        assert_eq!(a, vec![0, 1]);
        assert_eq!(b, vec![2, 3, 4]);

        // P4's bipartition exists but misses cross edges.
        assert_eq!(is_complete_bipartite(&Graph::path(4)), Ok(None));
        // Odd cycle is not bipartite at all.
        assert_eq!(is_complete_bipartite(&Graph::cycle(5)), Ok(None));

        assert_eq!(
            is_complete_bipartite(&Graph::edgeless(1)),
            Err(GraphError::TooSmall { required: 2, n: 1 })
        );
        assert_eq!(
            is_complete_bipartite(&Graph::edgeless(2)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn delete_vertices_renumbers() {
        let g = Graph::path(5);
        let removed: BTreeSet<usize> = [1, 3].into_iter().collect();
        let (h, map) = g.delete_vertices(&removed);
        assert_eq!(h.n(), 3);
        assert_eq!(map, vec![Some(0), None, Some(1), None, Some(2)]);
        assert_eq!(h.num_edges(), 0);
    }
}
