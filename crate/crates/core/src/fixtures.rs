//! Graph fixtures shared by the in-crate test suites.

use crate::graph::{build_graph, build_unit_graph, Graph, DEFAULT_MAX_NODES};
use crate::rational::rat;

/// Ten-node reference tree used across the test suites. Degrees: nodes
/// 0, 2, 6, 8, 9 are leaves; 1 and 7 have degree 2; 3, 4, 5 have degree 3.
pub fn ten_node_tree() -> Graph {
    build_unit_graph(&[
        (0, 7),
        (7, 1),
        (1, 4),
        (4, 8),
        (4, 5),
        (2, 3),
        (3, 6),
        (3, 5),
        (5, 9),
    ])
    .unwrap()
}

/// Unit-weight four-cycle: the smallest graph where transport must route
/// around two sides of a cycle.
pub fn four_cycle() -> Graph {
    build_unit_graph(&[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
}

/// Path 0 - 1 - 2 with edge weights 2 and 3.
pub fn weighted_path3() -> Graph {
    build_graph(&[(0, 1, rat(2, 1)), (1, 2, rat(3, 1))], DEFAULT_MAX_NODES).unwrap()
}
