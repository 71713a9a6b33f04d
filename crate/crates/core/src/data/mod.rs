//! Labeled graph collections: the in-memory dataset type, the TU benchmark
//! loader, summary statistics and the pool text format.

mod pool;
mod stats;
mod tu;

pub use pool::{load_pool, read_pool, save_pool, write_pool, POOL_SCHEMA_VERSION};
pub use stats::{dataset_stats, DatasetStats};
pub use tu::{load_tu_dataset, TuDataset};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Where a graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Graph `id` of the loaded dataset.
    Original { id: usize },
    /// Produced by a mapping in `iteration`; `source` is the id of the
    /// original graph at the root of its derivation chain.
    Augmented { source: usize, iteration: u32 },
}

impl Provenance {
    /// Id of the original graph this one descends from (itself if original).
    pub fn root(&self) -> usize {
        match *self {
            Provenance::Original { id } => id,
            Provenance::Augmented { source, .. } => source,
        }
    }

    pub fn is_augmented(&self) -> bool {
        matches!(self, Provenance::Augmented { .. })
    }
}

/// Graphs with dense 0-based class labels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledDataset {
    graphs: Vec<Graph>,
    labels: Vec<usize>,
    provenance: Vec<Provenance>,
    class_count: usize,
}

impl LabeledDataset {
    pub fn new(class_count: usize) -> Self {
        Self {
            class_count,
            ..Self::default()
        }
    }

    /// Builds a dataset of original graphs, ids `0..len`.
    pub fn from_parts(graphs: Vec<Graph>, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if graphs.len() != labels.len() {
            return Err(Error::input(format!(
                "{} graphs but {} labels",
                graphs.len(),
                labels.len()
            )));
        }
        let mut d = Self::new(class_count);
        for (id, (g, y)) in graphs.into_iter().zip(labels).enumerate() {
            d.push(g, y, Provenance::Original { id })?;
        }
        Ok(d)
    }

    pub fn push(&mut self, graph: Graph, label: usize, provenance: Provenance) -> Result<()> {
        if label >= self.class_count {
            return Err(Error::input(format!(
                "label {label} outside 0..{}",
                self.class_count
            )));
        }
        self.graphs.push(graph);
        self.labels.push(label);
        self.provenance.push(provenance);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn get(&self, i: usize) -> Option<(&Graph, usize, Provenance)> {
        Some((self.graphs.get(i)?, self.labels[i], self.provenance[i]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Graph, usize, Provenance)> + '_ {
        self.graphs
            .iter()
            .zip(&self.labels)
            .zip(&self.provenance)
            .map(|((g, &y), &p)| (g, y, p))
    }

    /// Sub-dataset at `indices`, provenance kept.
    pub fn subset(&self, indices: &[usize]) -> Self {
        let mut d = Self::new(self.class_count);
        for &i in indices {
            d.graphs.push(self.graphs[i].clone());
            d.labels.push(self.labels[i]);
            d.provenance.push(self.provenance[i]);
        }
        d
    }

    pub fn extend_from(&mut self, other: &LabeledDataset) {
        debug_assert_eq!(self.class_count, other.class_count);
        self.graphs.extend(other.graphs.iter().cloned());
        self.labels.extend_from_slice(&other.labels);
        self.provenance.extend_from_slice(&other.provenance);
    }

    /// Examples per class.
    pub fn class_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.class_count];
        for &y in &self.labels {
            h[y] += 1;
        }
        h
    }
}
