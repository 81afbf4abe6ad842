//! Built-in example instances used by the CLI generator and the test suites.

use crate::graph::Graph;
use crate::reduce::PositiveCnf;
use crate::verify::Coloring;

/// A 10-vertex, 11-edge graph with a pair of false twins `u = 4`, `v = 5`
/// (both adjacent to exactly {3, 6}). It is strongly cfvc 3-colorable, but
/// deleting `u` destroys 3-colorability, witnessing that the property is not
/// monotone under vertex deletion.
///
/// Layout: 0-1-3-5-6-7-8-9 is a path, plus 0-2-3 and 3-4-6.
pub fn nonmonotone_example() -> Graph {
    Graph::from_edges(
        10,
        [
            (0, 1),
            (1, 3),
            (3, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (0, 2),
            (2, 3),
            (3, 4),
            (4, 6),
        ],
    )
    .expect("fixture edges are valid")
}

/// A strong cfvc 3-coloring of [`nonmonotone_example`].
pub fn nonmonotone_example_coloring() -> Coloring {
    Coloring {
        k: 3,
        assignment: vec![0, 1, 2, 0, 1, 2, 0, 2, 1, 0],
    }
}

/// [`nonmonotone_example`] with the twin `u = 4` deleted (vertices above 4
/// shift down by one). Not strongly cfvc 3-colorable.
pub fn nonmonotone_example_minus_u() -> Graph {
    let g = nonmonotone_example();
    let removed = std::iter::once(4).collect();
    g.delete_vertices(&removed).0
}

/// The 6-variable, 4-clause positive formula used as the standard reduction
/// example: clauses {0,1,3}, {2,4}, {2,3,5}, {1,3,4,5}. NAE-satisfiable.
pub fn sample_formula() -> PositiveCnf {
    PositiveCnf::new(
        6,
        vec![
            vec![0, 1, 3],
            vec![2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4, 5],
        ],
    )
    .expect("fixture formula is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_dag, false_twin_classes, is_connected};
    use crate::verify::verify_strong_cfvc;

    #[test]
    fn example_shape() {
        let g = nonmonotone_example();
        assert_eq!(g.n(), 10);
        assert_eq!(g.num_edges(), 11);
        assert!(is_connected(&g));
        let g2 = nonmonotone_example_minus_u();
        assert_eq!(g2.n(), 9);
        assert_eq!(g2.num_edges(), 9);
    }

    #[test]
    fn example_has_the_expected_twins() {
        let g = nonmonotone_example();
        let all: Vec<usize> = (0..g.n()).collect();
        let classes = false_twin_classes(&g, &all).classes;
        assert!(classes.contains(&vec![1, 2]));
        assert!(classes.contains(&vec![4, 5]));
    }

    #[test]
    fn printed_coloring_verifies() {
        let g = nonmonotone_example();
        let f = nonmonotone_example_coloring();
        let report = verify_strong_cfvc(&g, &f).unwrap();
        assert!(report.is_strong_cfvc());
    }

    #[test]
    fn long_pair_distance() {
        let g = nonmonotone_example();
        let dag = bfs_dag(&g, 0);
        assert_eq!(dag.dist[9], 7);
    }

    #[test]
    fn twin_to_endpoint_pair_is_conflict_free() {
        // The unique shortest path 4-6-7-8-9 carries colors 1,0,2,1,0: color
        // 2 occurs exactly once.
        let g = nonmonotone_example();
        let f = nonmonotone_example_coloring();
        let dag = bfs_dag(&g, 4);
        assert_eq!(dag.dist[9], 4);
        assert!(crate::verify::cf_shortest_path_exists(&dag, &f, 4, 9).unwrap());
        assert!(crate::verify::oracle_cf_path(&g, &f, 4, 9).unwrap());
    }
}
