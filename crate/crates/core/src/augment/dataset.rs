use log::warn;
use rayon::prelude::*;

use super::GraphMapping;
use crate::data::{LabeledDataset, Provenance};
use crate::seed::substream;

/// A training graph the mapping could not augment.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipRecord {
    /// Position in the input dataset.
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedPool {
    pub pool: LabeledDataset,
    pub skipped: Vec<SkipRecord>,
    pub connectivity_relaxed: usize,
    pub dropped_swaps: usize,
    /// Total added edges (equal to total deleted edges).
    pub edits: usize,
}

/// Maps every graph of `train` once, keeping its label. Graph `i` draws
/// from the substream `(seed, iteration, i)`, so the pool is independent of
/// the number of worker threads.
pub fn augment_dataset<M>(train: &LabeledDataset, mapping: &M, seed: u64, iteration: u32) -> AugmentedPool
where
    M: GraphMapping + ?Sized,
{
    let results: Vec<_> = train
        .graphs()
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut rng = substream(seed, &[u64::from(iteration), i as u64]);
            mapping.map_graph(g, &mut rng)
        })
        .collect();

    let mut out = AugmentedPool {
        pool: LabeledDataset::new(train.class_count()),
        skipped: Vec::new(),
        connectivity_relaxed: 0,
        dropped_swaps: 0,
        edits: 0,
    };
    for (index, ((_, label, prov), res)) in train.iter().zip(results).enumerate() {
        match res {
            Ok(aug) => {
                out.connectivity_relaxed += usize::from(aug.connectivity_relaxed);
                out.dropped_swaps += aug.dropped_swaps;
                out.edits += aug.plan.additions.len();
                let p = Provenance::Augmented {
                    source: prov.root(),
                    iteration,
                };
                out.pool
                    .push(aug.graph, label, p)
                    .expect("label copied from a valid dataset");
            }
            Err(e) => {
                warn!("skipping training graph {index}: {e}");
                out.skipped.push(SkipRecord {
                    index,
                    reason: e.to_string(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{AugmentConfig, Mapping};
    use crate::graph::Graph;

    fn data() -> LabeledDataset {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        LabeledDataset::from_parts(vec![p3.clone(), k3, star, p3], vec![0, 1, 1, 0], 2).unwrap()
    }

    #[test]
    fn skips_infeasible_and_copies_labels() {
        let cfg = AugmentConfig::new(Mapping::MotifSimilarity);
        let out = augment_dataset(&data(), &cfg, 5, 1);
        assert_eq!(out.pool.len(), 3);
        assert_eq!(out.pool.labels(), &[0, 1, 0]);
        assert_eq!(out.skipped.len(), 1);
        assert_eq!(out.skipped[0].index, 1);
        assert_eq!(
            out.pool.provenance()[1],
            Provenance::Augmented { source: 2, iteration: 1 }
        );
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cfg = AugmentConfig::new(Mapping::Random);
        let a = augment_dataset(&data(), &cfg, 9, 2);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| augment_dataset(&data(), &cfg, 9, 2));
        assert_eq!(a, b);
    }
}
