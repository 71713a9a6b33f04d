use nalgebra::{DMatrix, SymmetricEigen};

use crate::graph::Graph;

/// Combinatorial Laplacian `Deg - A` as a dense matrix.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        let (u, v) = e.endpoints();
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

/// All Laplacian eigenvalues, ascending.
pub fn laplacian_spectrum(g: &Graph) -> Vec<f64> {
    if g.vertex_count() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(laplacian(g)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// The `dim` smallest Laplacian eigenvalues in ascending order, zero-padded
/// when the graph has fewer than `dim` vertices.
pub fn spectral_embed(g: &Graph, dim: usize) -> Vec<f64> {
    let mut out = laplacian_spectrum(g);
    out.resize(dim, 0.0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-8)
    }

    #[test]
    fn single_edge() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(close(&spectral_embed(&k2, 3), &[0.0, 2.0, 0.0]));
    }

    #[test]
    fn edgeless_and_empty() {
        assert_eq!(spectral_embed(&Graph::empty(4), 4), vec![0.0; 4]);
        assert_eq!(spectral_embed(&Graph::empty(0), 3), vec![0.0; 3]);
    }

    #[test]
    fn triangle() {
        // det(L - xI) = -x (x - 3)^2 for K3.
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(close(&spectral_embed(&k3, 3), &[0.0, 3.0, 3.0]));
    }

    #[test]
    fn truncates_to_smallest() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        // path P3 spectrum {0, 1, 3}
        assert!(close(&spectral_embed(&p3, 2), &[0.0, 1.0]));
    }
}
