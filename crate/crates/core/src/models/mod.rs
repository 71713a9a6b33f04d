//! Probability-emitting graph classifiers.
//!
//! [`GraphClassifier`] is what the evolution loop consumes. The shipped
//! implementation, [`SpectralClassifier`], embeds each graph as the smallest
//! eigenvalues of its Laplacian and hands the vectors to a
//! [`FeatureClassifier`] (KNN or multinomial logistic regression). Anything
//! else that emits class distributions can implement [`GraphClassifier`]
//! directly.

mod embedding;
mod knn;
mod logistic;
mod persist;

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use embedding::{laplacian, laplacian_spectrum, spectral_embed};
pub use knn::KnnClassifier;
pub use logistic::{objective, softmax, LogisticConfig, LogisticRegression, SoftmaxParams};
pub use persist::{load_model, read_model, save_model, write_model, MODEL_FORMAT_VERSION};

use crate::data::LabeledDataset;
use crate::error::{Error, Result};
use crate::filtration::ProbabilityVector;
use crate::graph::Graph;

/// Classifier over fixed-length feature vectors.
pub trait FeatureClassifier: Send + Sync {
    /// Trains from scratch, discarding any previous state.
    fn fit(&mut self, features: &[Vec<f64>], labels: &[usize], class_count: usize) -> Result<()>;

    fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityVector>;

    fn class_count(&self) -> usize;
}

/// Classifier over graphs.
pub trait GraphClassifier: Send + Sync {
    /// Trains from scratch on `data`.
    fn fit(&mut self, data: &LabeledDataset) -> Result<()>;

    fn predict_proba(&self, g: &Graph) -> Result<ProbabilityVector>;

    fn class_count(&self) -> usize;

    fn predict_proba_batch(&self, graphs: &[Graph]) -> Result<Vec<ProbabilityVector>> {
        graphs.iter().map(|g| self.predict_proba(g)).collect()
    }

    /// Arg-max class, ties to the lowest index.
    fn predict(&self, g: &Graph) -> Result<usize> {
        self.predict_proba(g).map(|p| p.argmax())
    }
}

pub(crate) fn check_training_set(features: &[Vec<f64>], labels: &[usize], class_count: usize) -> Result<()> {
    if features.is_empty() {
        return Err(Error::Training("empty training set".into()));
    }
    if features.len() != labels.len() {
        return Err(Error::Training(format!(
            "{} feature vectors but {} labels",
            features.len(),
            labels.len()
        )));
    }
    let dim = features[0].len();
    if features.iter().any(|f| f.len() != dim) {
        return Err(Error::Training("feature vectors differ in length".into()));
    }
    if features.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Training("non-finite feature value".into()));
    }
    let mut seen = vec![false; class_count];
    for &y in labels {
        if y >= class_count {
            return Err(Error::Training(format!("label {y} outside 0..{class_count}")));
        }
        seen[y] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Training(format!("class {missing} has no training examples")));
    }
    Ok(())
}

/// Share of `labels` matched by the arg-max prediction.
pub fn feature_accuracy<C: FeatureClassifier + ?Sized>(
    c: &C,
    features: &[Vec<f64>],
    labels: &[usize],
) -> Result<f64> {
    if features.is_empty() || features.len() != labels.len() {
        return Err(Error::input("accuracy needs a non-empty, aligned evaluation set"));
    }
    let mut correct = 0;
    for (x, &y) in features.iter().zip(labels) {
        correct += usize::from(c.predict_proba(x)?.argmax() == y);
    }
    Ok(correct as f64 / features.len() as f64)
}

/// Share of `data` whose label is the arg-max prediction.
pub fn accuracy<C: GraphClassifier + ?Sized>(c: &C, data: &LabeledDataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::input("accuracy of an empty evaluation set"));
    }
    let probs = c.predict_proba_batch(data.graphs())?;
    let correct = probs
        .iter()
        .zip(data.labels())
        .filter(|(p, &y)| p.argmax() == y)
        .count();
    Ok(correct as f64 / data.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierKind {
    Knn,
    Logistic,
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "knn" => Ok(Self::Knn),
            "logistic" | "log" => Ok(Self::Logistic),
            _ => Err(Error::input(format!("unknown classifier {s:?}"))),
        }
    }
}

impl std::fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Self::Knn => "knn",
            Self::Logistic => "logistic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub embedding_dim: usize,
    pub classifier: ClassifierKind,
    pub knn_k: usize,
    pub logistic: LogisticConfig,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            embedding_dim: 128,
            classifier: ClassifierKind::Knn,
            knn_k: 5,
            logistic: LogisticConfig::default(),
        }
    }
}

impl ModelConfig {
    pub fn build(&self) -> SpectralClassifier {
        let head = match self.classifier {
            ClassifierKind::Knn => Classifier::Knn(KnnClassifier::new(self.knn_k)),
            ClassifierKind::Logistic => Classifier::Logistic(LogisticRegression::new(self.logistic.clone())),
        };
        SpectralClassifier::new(self.embedding_dim, head)
    }
}

/// The shipped feature classifiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classifier {
    Knn(KnnClassifier),
    Logistic(LogisticRegression),
}

impl FeatureClassifier for Classifier {
    fn fit(&mut self, features: &[Vec<f64>], labels: &[usize], class_count: usize) -> Result<()> {
        match self {
            Classifier::Knn(c) => c.fit(features, labels, class_count),
            Classifier::Logistic(c) => c.fit(features, labels, class_count),
        }
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityVector> {
        match self {
            Classifier::Knn(c) => c.predict_proba(x),
            Classifier::Logistic(c) => c.predict_proba(x),
        }
    }

    fn class_count(&self) -> usize {
        match self {
            Classifier::Knn(c) => c.class_count(),
            Classifier::Logistic(c) => c.class_count(),
        }
    }
}

/// Laplacian-spectrum embedding followed by a feature classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralClassifier {
    embedding_dim: usize,
    head: Classifier,
}

impl SpectralClassifier {
    pub fn new(embedding_dim: usize, head: Classifier) -> Self {
        Self { embedding_dim, head }
    }

    pub fn embedding_dim(&self) -> usize {
        self.embedding_dim
    }

    pub fn head(&self) -> &Classifier {
        &self.head
    }

    pub fn embed_all(&self, graphs: &[Graph]) -> Vec<Vec<f64>> {
        graphs
            .par_iter()
            .map(|g| spectral_embed(g, self.embedding_dim))
            .collect()
    }
}

impl GraphClassifier for SpectralClassifier {
    fn fit(&mut self, data: &LabeledDataset) -> Result<()> {
        if self.embedding_dim == 0 {
            return Err(Error::Training("embedding dimension must be positive".into()));
        }
        let features = self.embed_all(data.graphs());
        self.head.fit(&features, data.labels(), data.class_count())
    }

    fn predict_proba(&self, g: &Graph) -> Result<ProbabilityVector> {
        self.head.predict_proba(&spectral_embed(g, self.embedding_dim))
    }

    fn class_count(&self) -> usize {
        self.head.class_count()
    }

    fn predict_proba_batch(&self, graphs: &[Graph]) -> Result<Vec<ProbabilityVector>> {
        graphs
            .par_iter()
            .map(|g| self.predict_proba(g))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accuracy_of_perfect_and_constant_predictors() {
        struct Const(usize);
        impl FeatureClassifier for Const {
            fn fit(&mut self, _: &[Vec<f64>], _: &[usize], _: usize) -> Result<()> {
                Ok(())
            }
            fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityVector> {
                let c = if self.0 == usize::MAX { x[0] as usize } else { self.0 };
                let mut p = vec![0.0; 2];
                p[c] = 1.0;
                ProbabilityVector::new(p)
            }
            fn class_count(&self) -> usize {
                2
            }
        }
        let xs: Vec<Vec<f64>> = (0..10).map(|i| vec![(i % 2) as f64]).collect();
        let ys: Vec<usize> = (0..10).map(|i| i % 2).collect();
        assert_eq!(feature_accuracy(&Const(usize::MAX), &xs, &ys).unwrap(), 1.0);
        assert_eq!(feature_accuracy(&Const(0), &xs, &ys).unwrap(), 0.5);
        assert!(feature_accuracy(&Const(0), &[], &[]).is_err());
    }

    #[test]
    fn missing_class_is_a_training_error() {
        let err = check_training_set(&[vec![0.0], vec![1.0]], &[0, 0], 2).unwrap_err();
        assert!(matches!(err, Error::Training(_)));
    }

    #[test]
    fn spectral_knn_end_to_end() {
        let mut graphs = Vec::new();
        let mut labels = Vec::new();
        for n in 4..10 {
            graphs.push(Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap());
            labels.push(0);
            graphs.push(Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap());
            labels.push(1);
        }
        let data = LabeledDataset::from_parts(graphs, labels, 2).unwrap();
        let mut model = ModelConfig {
            embedding_dim: 8,
            knn_k: 1,
            ..ModelConfig::default()
        }
        .build();
        model.fit(&data).unwrap();
        assert_eq!(accuracy(&model, &data).unwrap(), 1.0);
    }
}
