//! The building blocks of the similarity and motif mappings: resource
//! allocation scores, length-l paths and the resulting candidate sets.

use mevolve::augment::{addition_weights, build_motif_candidates, deletion_weights};
use mevolve::graph::Graph;

fn main() -> mevolve::Result<()> {
    // A 4-cycle with a chord and a tail: 0-1-2-3-0, 0-2, 3-4.
    let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)])?;

    println!("RA scores of unlinked pairs:");
    for i in 0..5 {
        for j in i + 1..5 {
            if !g.has_edge(i, j) {
                println!("  s({i},{j}) = {:.4}", g.ra_score(i, j)?);
            }
        }
    }

    println!("paths of length 2 from 1 to 3:");
    for p in g.find_paths(1, 3, 2)? {
        println!("  {:?}", p.vertices());
    }

    for l in 2..=3 {
        let cands = build_motif_candidates(&g, l);
        let table = addition_weights(&g, &cands);
        println!("open motifs with {l} edges close into:");
        for (e, w) in table.entries() {
            println!("  {e}  weight {w:.4}");
        }
    }

    println!("deletion weights (high RA = structurally redundant = rarely deleted):");
    for (e, w) in deletion_weights(&g, g.edges()).entries() {
        println!("  {e}  {w:.4}");
    }
    Ok(())
}
