//! Multinomial logistic regression trained by full-batch gradient descent on
//! the L2-regularized mean cross-entropy. Inputs are standardized with the
//! training mean and deviation, which are stored with the weights.

use serde::{Deserialize, Serialize};

use super::{check_training_set, FeatureClassifier};
use crate::error::{Error, Result};
use crate::filtration::ProbabilityVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticConfig {
    pub learning_rate: f64,
    pub l2: f64,
    pub epochs: usize,
    /// Stop once the largest gradient component falls below this.
    pub tolerance: f64,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.5,
            l2: 1e-2,
            epochs: 300,
            tolerance: 1e-6,
        }
    }
}

/// Class weights (row-major, `classes × dim`) and biases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftmaxParams {
    pub classes: usize,
    pub dim: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl SoftmaxParams {
    pub fn zeros(classes: usize, dim: usize) -> Self {
        Self {
            classes,
            dim,
            weights: vec![0.0; classes * dim],
            bias: vec![0.0; classes],
        }
    }

    /// Weights then biases, flattened.
    pub fn to_flat(&self) -> Vec<f64> {
        self.weights.iter().chain(&self.bias).copied().collect()
    }

    pub fn from_flat(classes: usize, dim: usize, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), classes * dim + classes);
        Self {
            classes,
            dim,
            weights: flat[..classes * dim].to_vec(),
            bias: flat[classes * dim..].to_vec(),
        }
    }

    pub fn probabilities(&self, x: &[f64]) -> Vec<f64> {
        let logits: Vec<f64> = (0..self.classes)
            .map(|c| {
                let row = &self.weights[c * self.dim..(c + 1) * self.dim];
                self.bias[c] + row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>()
            })
            .collect();
        softmax(&logits)
    }

    fn step(&mut self, grad: &SoftmaxParams, lr: f64) {
        for (w, g) in self.weights.iter_mut().zip(&grad.weights) {
            *w -= lr * g;
        }
        for (b, g) in self.bias.iter_mut().zip(&grad.bias) {
            *b -= lr * g;
        }
    }

    fn max_abs(&self) -> f64 {
        self.weights.iter().chain(&self.bias).fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exp: Vec<f64> = logits.iter().map(|l| (l - max).exp()).collect();
    let sum: f64 = exp.iter().sum();
    exp.into_iter().map(|e| e / sum).collect()
}

/// Mean cross-entropy plus `l2 / 2 · ‖W‖²` (biases unpenalized), and its
/// gradient.
pub fn objective(params: &SoftmaxParams, xs: &[Vec<f64>], ys: &[usize], l2: f64) -> (f64, SoftmaxParams) {
    let n = xs.len() as f64;
    let mut grad = SoftmaxParams::zeros(params.classes, params.dim);
    let mut loss = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let p = params.probabilities(x);
        loss -= p[y].max(f64::MIN_POSITIVE).ln();
        for c in 0..params.classes {
            let delta = p[c] - f64::from(u8::from(c == y));
            grad.bias[c] += delta;
            let row = &mut grad.weights[c * params.dim..(c + 1) * params.dim];
            for (g, v) in row.iter_mut().zip(x) {
                *g += delta * v;
            }
        }
    }
    loss /= n;
    grad.bias.iter_mut().for_each(|g| *g /= n);
    for (g, w) in grad.weights.iter_mut().zip(&params.weights) {
        *g = *g / n + l2 * w;
    }
    loss += 0.5 * l2 * params.weights.iter().map(|w| w * w).sum::<f64>();
    (loss, grad)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticRegression {
    config: LogisticConfig,
    mean: Vec<f64>,
    scale: Vec<f64>,
    params: SoftmaxParams,
    /// Epochs run by the last fit.
    epochs_run: usize,
}

impl LogisticRegression {
    pub fn new(config: LogisticConfig) -> Self {
        Self {
            config,
            mean: Vec::new(),
            scale: Vec::new(),
            params: SoftmaxParams::zeros(0, 0),
            epochs_run: 0,
        }
    }

    /// Untrained-shape model with all-zero weights over `dim` features.
    pub fn zeroed(classes: usize, dim: usize) -> Self {
        Self {
            mean: vec![0.0; dim],
            scale: vec![1.0; dim],
            params: SoftmaxParams::zeros(classes, dim),
            ..Self::new(LogisticConfig::default())
        }
    }

    pub fn params(&self) -> &SoftmaxParams {
        &self.params
    }

    pub fn epochs_run(&self) -> usize {
        self.epochs_run
    }

    pub fn standardize(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.mean.iter().zip(&self.scale))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }
}

impl FeatureClassifier for LogisticRegression {
    fn fit(&mut self, features: &[Vec<f64>], labels: &[usize], class_count: usize) -> Result<()> {
        check_training_set(features, labels, class_count)?;
        let dim = features[0].len();
        let n = features.len() as f64;
        self.mean = (0..dim)
            .map(|j| features.iter().map(|f| f[j]).sum::<f64>() / n)
            .collect();
        self.scale = (0..dim)
            .map(|j| {
                let var = features.iter().map(|f| (f[j] - self.mean[j]).powi(2)).sum::<f64>() / n;
                if var > 1e-24 {
                    var.sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        let xs: Vec<Vec<f64>> = features.iter().map(|f| self.standardize(f)).collect();

        let l2 = self.config.l2;
        let mut params = SoftmaxParams::zeros(class_count, dim);
        let (mut loss, mut grad) = objective(&params, &xs, labels, l2);
        let mut lr = self.config.learning_rate;
        let mut epochs = 0;
        while epochs < self.config.epochs && grad.max_abs() >= self.config.tolerance {
            epochs += 1;
            // Halve the step until the objective does not increase.
            loop {
                let mut next = params.clone();
                next.step(&grad, lr);
                let (next_loss, next_grad) = objective(&next, &xs, labels, l2);
                if next_loss <= loss || lr < 1e-12 {
                    params = next;
                    loss = next_loss;
                    grad = next_grad;
                    break;
                }
                lr *= 0.5;
            }
        }
        if !loss.is_finite() {
            return Err(Error::Training("logistic regression diverged".into()));
        }
        self.params = params;
        self.epochs_run = epochs;
        Ok(())
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ProbabilityVector> {
        if self.params.classes == 0 {
            return Err(Error::input("logistic regression is not trained"));
        }
        if x.len() != self.params.dim {
            return Err(Error::input(format!(
                "feature has dimension {}, model expects {}",
                x.len(),
                self.params.dim
            )));
        }
        ProbabilityVector::new(self.params.probabilities(&self.standardize(x)))
    }

    fn class_count(&self) -> usize {
        self.params.classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_are_uniform() {
        let m = LogisticRegression::zeroed(3, 4);
        let p = m.predict_proba(&[1.0, -2.0, 0.5, 3.0]).unwrap();
        for v in p.as_slice() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn separable_clusters() {
        let xs: Vec<Vec<f64>> = [-3.0, -2.5, -2.0, -1.5, 1.5, 2.0, 2.5, 3.0]
            .iter()
            .map(|&x| vec![x])
            .collect();
        let ys = [0, 0, 0, 0, 1, 1, 1, 1];
        let mut m = LogisticRegression::new(LogisticConfig::default());
        m.fit(&xs, &ys, 2).unwrap();
        let acc = super::super::feature_accuracy(&m, &xs, &ys).unwrap();
        assert_eq!(acc, 1.0);
    }

    #[test]
    fn gradient_matches_finite_differences_at_init() {
        // 10 samples, 3 features, 3 classes.
        let xs: Vec<Vec<f64>> = (0..10)
            .map(|i| {
                let t = i as f64;
                vec![(t * 0.7).sin(), (t * 1.3).cos(), t / 10.0 - 0.5]
            })
            .collect();
        let ys: Vec<usize> = (0..10).map(|i| i % 3).collect();
        let params = SoftmaxParams::zeros(3, 3);
        let (_, grad) = objective(&params, &xs, &ys, 0.1);
        let flat = params.to_flat();
        let h = 1e-5;
        for (k, g) in grad.to_flat().iter().enumerate() {
            let mut up = flat.clone();
            let mut down = flat.clone();
            up[k] += h;
            down[k] -= h;
            let fu = objective(&SoftmaxParams::from_flat(3, 3, &up), &xs, &ys, 0.1).0;
            let fd = objective(&SoftmaxParams::from_flat(3, 3, &down), &xs, &ys, 0.1).0;
            let fdiff = (fu - fd) / (2.0 * h);
            assert!((fdiff - g).abs() < 1e-6, "component {k}: {fdiff} vs {g}");
        }
    }

    #[test]
    fn refit_is_deterministic() {
        let xs: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, (i * i % 7) as f64]).collect();
        let ys: Vec<usize> = (0..20).map(|i| usize::from(i % 3 == 0)).collect();
        let mut a = LogisticRegression::new(LogisticConfig::default());
        let mut b = LogisticRegression::new(LogisticConfig::default());
        a.fit(&xs, &ys, 2).unwrap();
        b.fit(&xs, &ys, 2).unwrap();
        assert_eq!(a, b);
    }
}
