//! Random graph models used by tests, examples and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// G(n, p): each of the n(n-1)/2 pairs is an edge independently with
/// probability `p`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Preferential attachment. Starts from a star on `attach + 1` vertices,
/// then every new vertex links to `attach` distinct existing vertices chosen
/// proportionally to degree.
pub fn barabasi_albert<R: Rng + ?Sized>(n: usize, attach: usize, rng: &mut R) -> Graph {
    let attach = attach.max(1);
    if n <= attach {
        return erdos_renyi(n, 1.0, rng);
    }
    let mut edges = Vec::new();
    // Each vertex appears in `ends` once per incident edge.
    let mut ends = Vec::new();
    for v in 1..=attach {
        edges.push((0, v));
        ends.extend([0, v]);
    }
    for v in attach + 1..n {
        let mut targets: Vec<usize> = Vec::with_capacity(attach);
        while targets.len() < attach {
            let t = *ends.choose(rng).expect("seed star has edges");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            edges.push((t, v));
            ends.extend([t, v]);
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    #[test]
    fn ba_edge_count() {
        let g = barabasi_albert(30, 2, &mut rng_from_seed(3));
        assert_eq!(g.edge_count(), 2 + 2 * 27);
        assert!(g.is_connected());
    }

    #[test]
    fn er_extremes() {
        let mut rng = rng_from_seed(1);
        assert_eq!(erdos_renyi(6, 0.0, &mut rng).edge_count(), 0);
        assert_eq!(erdos_renyi(6, 1.0, &mut rng).edge_count(), 15);
    }
}
