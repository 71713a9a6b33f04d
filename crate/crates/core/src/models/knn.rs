use serde::{Deserialize, Serialize};

use super::{check_training_set, FeatureClassifier};
use crate::error::{Error, Result};
use crate::filtration::ProbabilityVector;

/// k-nearest-neighbor vote under Euclidean distance. Class probabilities are
/// vote fractions; equal distances go to the lower training index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnClassifier {
    k: usize,
    class_count: usize,
    features: Vec<Vec<f64>>,
    labels: Vec<usize>,
}

impl KnnClassifier {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            class_count: 0,
            features: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Training indices of the `k` nearest stored points, nearest first.
    pub fn neighbors(&self, x: &[f64]) -> Result<Vec<usize>> {
        let dim = self.features.first().map_or(0, Vec::len);
        if self.features.is_empty() {
            return Err(Error::input("KNN classifier is not trained"));
        }
        if x.len() != dim {
            return Err(Error::input(format!(
                "feature has dimension {}, model expects {dim}",
                x.len()
            )));
        }
        let mut dist: Vec<(f64, usize)> = self
            .features
            .iter()
            .enumerate()
            .map(|(i, f)| (f.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum(), i))
            .collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(dist.into_iter().take(self.k).map(|(_, i)| i).collect())
    }
}

impl FeatureClassifier for KnnClassifier {
    fn fit(&mut self, features: &[Vec<f64>], labels: &[usize], class_count: usize) -> Result<()> {
        check_training_set(features, labels, class_count)?;
        if self.k == 0 || self.k > features.len() {
            return Err(Error::Training(format!(
                "k = {} needs between 1 and {} training points",
                self.k,
                features.len()
            )));
        }
        self.class_count = class_count;
        self.features = features.to_vec();
        self.labels = labels.to_vec();
        Ok(())
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityVector> {
        let mut votes = vec![0.0; self.class_count];
        let nn = self.neighbors(x)?;
        for &i in &nn {
            votes[self.labels[i]] += 1.0;
        }
        let k = nn.len() as f64;
        votes.iter_mut().for_each(|v| *v /= k);
        ProbabilityVector::new(votes)
    }

    fn class_count(&self) -> usize {
        self.class_count
    }
}
