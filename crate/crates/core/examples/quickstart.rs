//! Minimal library tour: build a graph, compute all three curvatures, and
//! cross-check a closed form against the transport definition.

use curvkit::curvature::{
    lly_tree_closed, orc_definitional, orc_tree_closed, steinerberger_tree_closed,
};
use curvkit::rational::{fmt_exact, rat};
use curvkit::build_unit_graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A path on three nodes: 0 - 1 - 2.
    let g = build_unit_graph(&[(0, 1), (1, 2)])?;
    let alpha = rat(1, 2);

    // Lazy-walk edge curvature at laziness 1/2, via the tree closed form.
    let closed = orc_tree_closed(&g, 0, 1, &alpha)?.orc.unwrap();
    println!("edge (0,1) curvature at laziness 1/2: {}", fmt_exact(&closed)); // 1/2

    // The same value from the definition: 1 - W1(m_0, m_1) / d(0,1).
    let definitional = orc_definitional(&g, 0, 1, &alpha)?.orc.unwrap();
    assert_eq!(closed, definitional);

    // High-laziness limit curvature of the same edge.
    let limit = lly_tree_closed(&g, 0, 1)?.lly.unwrap();
    println!("edge (0,1) limit curvature: {}", fmt_exact(&limit)); // 1

    // Node curvature from the distance system (closed form on trees).
    let nodes = steinerberger_tree_closed(&g)?;
    println!("node 0 curvature: {}", fmt_exact(&nodes.values[0])); // 3/2
    println!("node 1 curvature: {}", fmt_exact(&nodes.values[1])); // 0
    Ok(())
}
