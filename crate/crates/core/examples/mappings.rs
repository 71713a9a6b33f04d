//! Apply each of the four structural mappings to one small graph and show
//! which edges were swapped.

use mevolve::augment::{augment_graph, AugmentConfig, Mapping};
use mevolve::graph::Graph;
use mevolve::seed::rng_from_seed;

fn main() -> mevolve::Result<()> {
    // Two triangles joined by a bridge, plus a pendant path.
    let g = Graph::from_edges(
        9,
        [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (7, 8)],
    )?;
    println!("source: {} vertices, {} edges", g.vertex_count(), g.edge_count());

    for mapping in Mapping::ALL {
        let cfg = AugmentConfig {
            beta: 0.2,
            ..AugmentConfig::new(mapping)
        };
        let out = augment_graph(&g, &cfg, &mut rng_from_seed(42))?;
        let fmt = |es: &[mevolve::Edge]| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        println!(
            "{mapping:<18} +[{}] -[{}] connected={} relaxed={}",
            fmt(&out.plan.additions),
            fmt(&out.plan.deletions),
            out.graph.is_connected(),
            out.connectivity_relaxed
        );
    }
    Ok(())
}
