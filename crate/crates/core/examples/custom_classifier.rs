//! The loop works with any classifier that emits class probabilities. Here
//! a nearest-centroid model over (vertex count, edge count, max degree)
//! stands in for the spectral one.

use std::path::PathBuf;

use mevolve::augment::AugmentConfig;
use mevolve::data::{load_tu_dataset, LabeledDataset};
use mevolve::evolve::{evolve_with, stratified_split, FilterPolicy, LoopOptions, PoolSource, SplitFractions};
use mevolve::filtration::ProbabilityVector;
use mevolve::graph::Graph;
use mevolve::models::GraphClassifier;
use mevolve::seed::rng_from_seed;

#[derive(Default)]
struct NearestCentroid {
    centroids: Vec<[f64; 3]>,
}

fn features(g: &Graph) -> [f64; 3] {
    let max_deg = (0..g.vertex_count()).map(|v| g.degree(v).unwrap()).max().unwrap_or(0);
    [g.vertex_count() as f64, g.edge_count() as f64, max_deg as f64]
}

impl GraphClassifier for NearestCentroid {
    fn fit(&mut self, data: &LabeledDataset) -> mevolve::Result<()> {
        let mut sums = vec![[0.0; 3]; data.class_count()];
        let mut counts = vec![0.0; data.class_count()];
        for (g, y, _) in data.iter() {
            for (s, f) in sums[y].iter_mut().zip(features(g)) {
                *s += f;
            }
            counts[y] += 1.0;
        }
        self.centroids = sums.iter().zip(&counts).map(|(s, &c)| s.map(|x| x / c)).collect();
        Ok(())
    }

    /// Softmax over negative distances to the centroids.
    fn predict_proba(&self, g: &Graph) -> mevolve::Result<ProbabilityVector> {
        let f = features(g);
        let d: Vec<f64> = self
            .centroids
            .iter()
            .map(|c| -c.iter().zip(&f).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
            .collect();
        let m = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let e: Vec<f64> = d.iter().map(|x| (x - m).exp()).collect();
        let z: f64 = e.iter().sum();
        ProbabilityVector::new(e.iter().map(|x| x / z).collect())
    }

    fn class_count(&self) -> usize {
        self.centroids.len()
    }
}

fn main() -> mevolve::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG");
    let d = load_tu_dataset(dir, "MUTAG")?.dataset;
    let s = stratified_split(&d, SplitFractions::default(), &mut rng_from_seed(3))?;
    let (train, val, test) = (d.subset(&s.train), d.subset(&s.val), d.subset(&s.test));

    let mut model = NearestCentroid::default();
    let opts = LoopOptions {
        iterations: 5,
        seed: 3,
        pool_source: PoolSource::Current,
        filter: FilterPolicy::Reliability,
    };
    let out = evolve_with(&train, &val, Some(&test), &mut model, &AugmentConfig::default(), opts)?;
    for it in &out.report.iterations {
        println!(
            "iteration {}: pool {:>4}  accepted {:>4}  theta {:.3}  val acc {:.3}",
            it.iteration, it.pool_size, it.accepted, it.theta, it.val_accuracy
        );
    }
    println!(
        "test accuracy {:.4} -> {:.4}",
        out.report.original_test_accuracy.unwrap(),
        out.report.evolved_test_accuracy.unwrap()
    );
    Ok(())
}
