use super::sampling::{WeightKind, WeightTable};
use crate::graph::{Edge, Graph};

/// Pairs that may be linked and edges that may be removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSets {
    /// Non-adjacent distinct pairs, ascending.
    pub add_candidates: Vec<Edge>,
    /// Existing edges, ascending.
    pub del_candidates: Vec<Edge>,
}

/// Every unlinked pair may be added, every edge may be removed.
pub fn build_random_candidates(g: &Graph) -> CandidateSets {
    let n = g.vertex_count();
    let mut add = Vec::with_capacity((n * n.saturating_sub(1) / 2).saturating_sub(g.edge_count()));
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                add.push(Edge::ordered(i, j));
            }
        }
    }
    CandidateSets {
        add_candidates: add,
        del_candidates: g.edges().to_vec(),
    }
}

/// Unlinked pairs that are the head and tail of some simple path with
/// `motif_length` edges, i.e. pairs an edge swap can close into a cycle.
pub fn build_motif_candidates(g: &Graph, motif_length: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if motif_length < 2 {
        return out;
    }
    for i in 0..g.vertex_count() {
        for j in g.path_endpoints_above(i, motif_length) {
            if !g.has_edge(i, j) {
                out.push(Edge::ordered(i, j));
            }
        }
    }
    out
}

fn ra_scores(g: &Graph, pairs: &[Edge]) -> Vec<f64> {
    pairs.iter().map(|e| g.ra_unchecked(e.u(), e.v())).collect()
}

/// Addition weights `s / Σ s` with RA scores computed over `pairs`.
/// Uniform if every score is zero.
pub fn addition_weights(g: &Graph, pairs: &[Edge]) -> WeightTable<Edge> {
    let scores = ra_scores(g, pairs);
    let total: f64 = scores.iter().sum();
    if total <= 0.0 {
        return WeightTable::uniform(pairs.iter().copied(), WeightKind::Addition);
    }
    let entries = pairs.iter().copied().zip(scores.iter().map(|s| s / total)).collect();
    WeightTable::new(entries, WeightKind::Addition).expect("normalized scores are valid weights")
}

/// Deletion weights `1 - s / Σ s`, normalized within `edges` itself so
/// weights stay in [0, 1]. Uniform if every score is zero.
pub fn deletion_weights(g: &Graph, edges: &[Edge]) -> WeightTable<Edge> {
    let scores = ra_scores(g, edges);
    let total: f64 = scores.iter().sum();
    if total <= 0.0 {
        return WeightTable::uniform(edges.iter().copied(), WeightKind::Deletion);
    }
    let entries = edges
        .iter()
        .copied()
        .zip(scores.iter().map(|s| (1.0 - s / total).max(0.0)))
        .collect();
    WeightTable::new(entries, WeightKind::Deletion).expect("weights clamped to [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn random_candidate_examples() {
        let k3 = build_random_candidates(&g(3, &[(0, 1), (1, 2), (0, 2)]));
        assert!(k3.add_candidates.is_empty());
        assert_eq!(k3.del_candidates.len(), 3);

        let empty = build_random_candidates(&Graph::empty(3));
        assert_eq!(empty.add_candidates.len(), 3);
        assert!(empty.del_candidates.is_empty());

        let p = build_random_candidates(&g(3, &[(0, 1), (1, 2)]));
        assert_eq!(p.add_candidates, vec![Edge::ordered(0, 2)]);
        assert_eq!(p.del_candidates, vec![Edge::ordered(0, 1), Edge::ordered(1, 2)]);
    }

    #[test]
    fn motif_candidates() {
        assert_eq!(build_motif_candidates(&g(3, &[(0, 1), (1, 2)]), 2), vec![Edge::ordered(0, 2)]);
        assert!(build_motif_candidates(&g(3, &[(0, 1), (1, 2), (0, 2)]), 2).is_empty());
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(build_motif_candidates(&p4, 3), vec![Edge::ordered(0, 3)]);
        assert!(build_motif_candidates(&Graph::empty(2), 2).is_empty());
    }

    #[test]
    fn weights_normalize_and_fall_back() {
        // 4-cycle plus chord-free pendant: pairs (0,2) and (1,3) share two
        // neighbors each; (0,4) has none.
        let c = g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)]);
        let pairs = [Edge::ordered(0, 2), Edge::ordered(1, 3), Edge::ordered(0, 4)];
        let w = addition_weights(&c, &pairs);
        assert!((w.total() - 1.0).abs() < 1e-12);
        assert_eq!(w.entries()[2].1, 0.0);

        let flat = addition_weights(&Graph::empty(3), &[Edge::ordered(0, 1), Edge::ordered(1, 2)]);
        assert_eq!(flat.entries()[0].1, flat.entries()[1].1);

        let d = deletion_weights(&c, c.edges());
        assert!(d.entries().iter().all(|(_, w)| (0.0..=1.0).contains(w)));
    }
}
