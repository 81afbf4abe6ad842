//! Shared test oracles: exhaustive graph enumeration, Floyd–Warshall,
//! brute-force coloring and cover search, and seeded random instances.
//! Everything here is independent of the library's algorithm choices.

#![allow(dead_code)]

use scfvc::graph::{Graph, VertexCover};
use scfvc::rng::SplitMix64;
use scfvc::verify::Coloring;

/// Number of vertex pairs for `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Adjacency bitmasks of the graph encoded by `mask`: bit p covers the p-th
/// pair (i, j), i < j, in lexicographic order.
pub fn adjacency_masks(n: usize, mask: u32) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    let mut p = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> p & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            p += 1;
        }
    }
    adj
}

pub fn mask_is_connected(n: usize, adj: &[u32]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen: u32 = 1;
    loop {
        let mut next = seen;
        for v in 0..n {
            if seen >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == n
}

/// Every pair is adjacent or shares a neighbor.
pub fn mask_diameter_at_most_2(n: usize, adj: &[u32]) -> bool {
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = adj[i] >> j & 1 == 1;
            if !adjacent && adj[i] & adj[j] == 0 {
                return false;
            }
        }
    }
    true
}

pub fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut p = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> p & 1 == 1 {
                edges.push((i, j));
            }
            p += 1;
        }
    }
    Graph::from_edges(n, edges).expect("mask edges are valid")
}

/// All connected labeled graphs on n vertices, as edge masks.
pub fn connected_masks(n: usize) -> Vec<u32> {
    let bits = pair_count(n);
    (0u32..1 << bits)
        .filter(|&mask| mask_is_connected(n, &adjacency_masks(n, mask)))
        .collect()
}

/// All-pairs shortest distances by Floyd–Warshall; `usize::MAX` means
/// unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    for row in &mut d {
        for cell in row {
            if *cell >= INF {
                *cell = usize::MAX;
            }
        }
    }
    d
}

/// Minimum vertex cover size by subset enumeration. Only for small n.
pub fn brute_min_vertex_cover(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16, "brute cover oracle caps at 16 vertices");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = n;
    for subset in 0u32..1 << n {
        if (subset.count_ones() as usize) < best
            && edges
                .iter()
                .all(|&(u, v)| subset >> u & 1 == 1 || subset >> v & 1 == 1)
        {
            best = subset.count_ones() as usize;
        }
    }
    best
}

fn color_backtrack(adj: &[u32], colors: &mut [usize], v: usize, k: usize) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 0..k {
        let clash = (0..v).any(|w| adj[v] >> w & 1 == 1 && colors[w] == c);
        if !clash {
            colors[v] = c;
            if color_backtrack(adj, colors, v + 1, k) {
                return true;
            }
        }
    }
    false
}

/// Proper k-colorability by plain backtracking.
pub fn brute_proper_k_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut colors = vec![0; n];
    color_backtrack(&adj, &mut colors, 0, k)
}

pub fn brute_chromatic_number(g: &Graph) -> usize {
    (1..=g.n().max(1))
        .find(|&k| brute_proper_k_colorable(g, k))
        .expect("n colors always suffice")
}

/// Every proper assignment with values in 0..k.
pub fn proper_colorings(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fn rec(
        g: &Graph,
        k: usize,
        v: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == current.len() {
            out.push(current.clone());
            return;
        }
        for c in 0..k {
            if g.neighbors(v).iter().all(|&w| w >= v || current[w] != c) {
                current[v] = c;
                rec(g, k, v + 1, current, out);
            }
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(g, k, 0, &mut current, &mut out);
    }
    out
}

/// Random connected graph: a random attachment tree plus each remaining pair
/// with probability 1/4.
pub fn random_connected_graph(rng: &mut SplitMix64, n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    let mut present = std::collections::BTreeSet::new();
    for v in 1..n {
        let parent = rng.below(v);
        edges.push((parent, v));
        present.insert((parent, v));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present.contains(&(i, j)) && rng.below(4) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

pub fn random_coloring(rng: &mut SplitMix64, n: usize, k: usize) -> Coloring {
    Coloring {
        k,
        assignment: (0..n).map(|_| rng.below(k)).collect(),
    }
}

/// A random proper coloring found by randomized greedy retries, if any.
pub fn random_proper_coloring(rng: &mut SplitMix64, g: &Graph, k: usize) -> Option<Coloring> {
    'attempt: for _ in 0..50 {
        let mut assignment = vec![usize::MAX; g.n()];
        for v in 0..g.n() {
            let offset = rng.below(k.max(1));
            let mut chosen = None;
            for shift in 0..k {
                let c = (offset + shift) % k;
                if g.neighbors(v).iter().all(|&w| assignment[w] != c) {
                    chosen = Some(c);
                    break;
                }
            }
            match chosen {
                Some(c) => assignment[v] = c,
                None => continue 'attempt,
            }
        }
        return Some(Coloring { k, assignment });
    }
    None
}

/// A connected graph with a planted false-twin class: `base_n` base vertices
/// plus `twins` new vertices all adjacent to the same nonempty base subset.
/// The base vertex set is a valid cover; the twins are the independent part.
pub fn planted_twin_instance(
    rng: &mut SplitMix64,
    base_n: usize,
    twins: usize,
) -> (Graph, VertexCover) {
    let base = random_connected_graph(rng, base_n);
    let anchor_count = 1 + rng.below(base_n);
    let anchors = rng.sample_distinct(base_n, anchor_count);
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    for t in 0..twins {
        for &s in &anchors {
            edges.push((s, base_n + t));
        }
    }
    let g = Graph::from_edges(base_n + twins, edges).expect("planted edges are valid");
    (g, VertexCover::new((0..base_n).collect()))
}

/// Duplicates the open neighborhood of `v` as one extra vertex, producing a
/// false twin of `v`. The new vertex has the highest index.
pub fn add_false_twin(g: &Graph, v: usize) -> Graph {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for &w in g.neighbors(v) {
        edges.push((w, n));
    }
    Graph::from_edges(n + 1, edges).expect("twin edges are valid")
}

/// Every positive CNF over exactly `num_vars` variables with 1..=max_clauses
/// clauses of size >= 2, as ordered clause tuples (duplicates allowed).
pub fn all_formulas(num_vars: usize, max_clauses: usize) -> Vec<scfvc::reduce::PositiveCnf> {
    let mut pool: Vec<Vec<usize>> = Vec::new();
    for subset in 1u32..1 << num_vars {
        if subset.count_ones() >= 2 {
            pool.push((0..num_vars).filter(|&v| subset >> v & 1 == 1).collect());
        }
    }
    let mut formulas = Vec::new();
    for m in 1..=max_clauses {
        let mut picks = vec![0usize; m];
        loop {
            let clauses: Vec<Vec<usize>> = picks.iter().map(|&i| pool[i].clone()).collect();
            formulas.push(scfvc::reduce::PositiveCnf::new(num_vars, clauses).unwrap());
            let mut carry = m;
            while carry > 0 {
                picks[carry - 1] += 1;
                if picks[carry - 1] < pool.len() {
                    break;
                }
                picks[carry - 1] = 0;
                carry -= 1;
            }
            if carry == 0 {
                break;
            }
        }
    }
    formulas
}
