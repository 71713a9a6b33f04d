use serde::Serialize;

use super::LabeledDataset;
use crate::error::{Error, Result};

/// Size profile of a dataset; `bias` is the share of its largest class,
/// i.e. the accuracy of always predicting the majority class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetStats {
    pub graph_count: usize,
    pub class_count: usize,
    pub avg_vertices: f64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub avg_edges: f64,
    pub min_edges: usize,
    pub max_edges: usize,
    pub bias: f64,
}

pub fn dataset_stats(d: &LabeledDataset) -> Result<DatasetStats> {
    if d.is_empty() {
        return Err(Error::input("statistics of an empty dataset"));
    }
    let vs: Vec<usize> = d.graphs().iter().map(|g| g.vertex_count()).collect();
    let es: Vec<usize> = d.graphs().iter().map(|g| g.edge_count()).collect();
    let n = d.len() as f64;
    let avg = |xs: &[usize]| xs.iter().sum::<usize>() as f64 / n;
    let majority = d.class_histogram().into_iter().max().unwrap_or(0);
    Ok(DatasetStats {
        graph_count: d.len(),
        class_count: d.class_count(),
        avg_vertices: avg(&vs),
        min_vertices: *vs.iter().min().unwrap(),
        max_vertices: *vs.iter().max().unwrap(),
        avg_edges: avg(&es),
        min_edges: *es.iter().min().unwrap(),
        max_edges: *es.iter().max().unwrap(),
        bias: majority as f64 / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn single_triangle() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = LabeledDataset::from_parts(vec![tri], vec![0], 1).unwrap();
        let s = dataset_stats(&d).unwrap();
        assert_eq!((s.avg_vertices, s.avg_edges, s.bias), (3.0, 3.0, 1.0));
    }

    #[test]
    fn empty_is_an_error() {
        assert!(dataset_stats(&LabeledDataset::new(2)).is_err());
    }
}
