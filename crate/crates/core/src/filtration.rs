//! Label-reliability filtration of weakly labeled (augmented) examples.
//!
//! The validation set fixes a per-class mean prediction (the probability
//! confusion matrix). An example's reliability is the inner product of its
//! own prediction with the mean prediction of its claimed class. The cut-off
//! is the threshold that best separates correctly from incorrectly
//! classified validation examples.

use std::io::Write;

use serde::Serialize;

use crate::data::{LabeledDataset, Provenance};
use crate::error::{Error, Result};
use crate::models::GraphClassifier;

const SUM_TOLERANCE: f64 = 1e-9;

/// Non-negative entries summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::input("empty probability vector"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::input(format!("invalid probabilities {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::input(format!("probabilities sum to {sum}")));
        }
        Ok(Self(probs))
    }

    pub fn one_hot(len: usize, class: usize) -> Self {
        let mut v = vec![0.0; len];
        v[class] = 1.0;
        Self(v)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the largest entry; ties go to the lowest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.0.iter().enumerate() {
            if p > self.0[best] {
                best = i;
            }
        }
        best
    }

    pub fn dot(&self, other: &[f64]) -> Result<f64> {
        if other.len() != self.0.len() {
            return Err(Error::input(format!(
                "dimension mismatch: {} vs {}",
                self.0.len(),
                other.len()
            )));
        }
        Ok(self.0.iter().zip(other).map(|(a, b)| a * b).sum())
    }
}

/// Row `k` is the mean prediction over validation examples of class `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusionMatrix {
    rows: Vec<Vec<f64>>,
    class_counts: Vec<usize>,
}

impl ConfusionMatrix {
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, class: usize) -> Option<&[f64]> {
        self.rows.get(class).map(Vec::as_slice)
    }

    pub fn class_counts(&self) -> &[usize] {
        &self.class_counts
    }

    pub fn class_count(&self) -> usize {
        self.rows.len()
    }
}

/// Per-class mean of the validation predictions. Every class must occur.
pub fn confusion_matrix(preds: &[(ProbabilityVector, usize)]) -> Result<ConfusionMatrix> {
    let Some((first, _)) = preds.first() else {
        return Err(Error::input("confusion matrix of an empty validation set"));
    };
    let classes = first.len();
    let mut sums = vec![vec![0.0; classes]; classes];
    let mut counts = vec![0usize; classes];
    for (p, y) in preds {
        if p.len() != classes || *y >= classes {
            return Err(Error::input("prediction or label outside the class range"));
        }
        counts[*y] += 1;
        for (s, v) in sums[*y].iter_mut().zip(p.as_slice()) {
            *s += v;
        }
    }
    if let Some(class) = counts.iter().position(|&c| c == 0) {
        return Err(Error::UndefinedRow { class });
    }
    for (row, &c) in sums.iter_mut().zip(&counts) {
        row.iter_mut().for_each(|v| *v /= c as f64);
    }
    Ok(ConfusionMatrix {
        rows: sums,
        class_counts: counts,
    })
}

/// `pᵀ q_y`.
pub fn label_reliability(p: &ProbabilityVector, y: usize, q: &ConfusionMatrix) -> Result<f64> {
    let row = q
        .row(y)
        .ok_or_else(|| Error::input(format!("class {y} outside the confusion matrix")))?;
    p.dot(row)
}

/// A validation example's reliability and whether the classifier got it
/// right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationRecord {
    pub reliability: f64,
    pub correct: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReliabilityThreshold {
    pub theta: f64,
    /// Validation examples on the wrong side of `theta`.
    pub objective_value: usize,
}

/// Offset used to probe just above a breakpoint.
pub const THRESHOLD_EPSILON: f64 = 1e-12;

/// Number of validation examples on the wrong side of `theta`: correct
/// ones with `r < theta` plus incorrect ones with `r > theta`. Examples with
/// `r == theta` never count.
pub fn threshold_objective(records: &[ValidationRecord], theta: f64) -> usize {
    records
        .iter()
        .filter(|rec| {
            let sign = if rec.correct { 1.0 } else { -1.0 };
            (theta - rec.reliability) * sign > 0.0
        })
        .count()
}

/// Minimizes [`threshold_objective`]. The objective is a step function
/// whose value only changes at the reliabilities, so it suffices to try 0,
/// every `r`, and every `r + ε`. Ties resolve to the smallest threshold.
pub fn optimize_threshold(records: &[ValidationRecord]) -> Result<ReliabilityThreshold> {
    if records.is_empty() {
        return Err(Error::input("threshold search needs validation records"));
    }
    let mut candidates = vec![0.0];
    for rec in records {
        candidates.push(rec.reliability);
        candidates.push(rec.reliability + THRESHOLD_EPSILON);
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let mut best = ReliabilityThreshold {
        theta: candidates[0],
        objective_value: threshold_objective(records, candidates[0]),
    };
    for &theta in &candidates[1..] {
        let value = threshold_objective(records, theta);
        if value < best.objective_value {
            best = ReliabilityThreshold {
                theta,
                objective_value: value,
            };
        }
    }
    Ok(best)
}

/// Reliability of one pool example and the decision taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoolDecision {
    pub index: usize,
    pub reliability: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutcome {
    pub accepted: LabeledDataset,
    pub rejected: LabeledDataset,
    pub decisions: Vec<PoolDecision>,
}

/// Splits `pool` by `r > theta` (strict), scoring with `classifier` and `q`.
pub fn filter_pool<C: GraphClassifier + ?Sized>(
    pool: &LabeledDataset,
    classifier: &C,
    q: &ConfusionMatrix,
    theta: f64,
) -> Result<FilterOutcome> {
    let probs = classifier.predict_proba_batch(pool.graphs())?;
    let mut accepted_idx = Vec::new();
    let mut rejected_idx = Vec::new();
    let mut decisions = Vec::with_capacity(pool.len());
    for (index, (p, &y)) in probs.iter().zip(pool.labels()).enumerate() {
        let reliability = label_reliability(p, y, q)?;
        let accepted = reliability > theta;
        if accepted {
            accepted_idx.push(index);
        } else {
            rejected_idx.push(index);
        }
        decisions.push(PoolDecision {
            index,
            reliability,
            accepted,
        });
    }
    Ok(FilterOutcome {
        accepted: pool.subset(&accepted_idx),
        rejected: pool.subset(&rejected_idx),
        decisions,
    })
}

/// Scores the validation set with `classifier` and derives the confusion
/// matrix, the per-example records and the optimal threshold.
pub fn calibrate<C: GraphClassifier + ?Sized>(
    classifier: &C,
    val: &LabeledDataset,
) -> Result<(ConfusionMatrix, Vec<ValidationRecord>, ReliabilityThreshold)> {
    let probs = classifier.predict_proba_batch(val.graphs())?;
    let preds: Vec<(ProbabilityVector, usize)> = probs.into_iter().zip(val.labels().iter().copied()).collect();
    let q = confusion_matrix(&preds)?;
    let records = preds
        .iter()
        .map(|(p, y)| {
            Ok(ValidationRecord {
                reliability: label_reliability(p, *y, &q)?,
                correct: p.argmax() == *y,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = optimize_threshold(&records)?;
    Ok((q, records, theta))
}

/// Audit CSV with header `graph_id,source_id,iteration,reliability,accepted`.
/// `graph_id` is the position in the pool; `source_id` and `iteration` come
/// from the provenance (`iteration` is 0 for original graphs).
pub fn write_audit_csv<W: Write>(pool: &LabeledDataset, decisions: &[PoolDecision], mut w: W) -> std::io::Result<()> {
    writeln!(w, "graph_id,source_id,iteration,reliability,accepted")?;
    for d in decisions {
        let (source, iteration) = match pool.provenance()[d.index] {
            Provenance::Original { id } => (id, 0),
            Provenance::Augmented { source, iteration } => (source, iteration),
        };
        writeln!(w, "{},{source},{iteration},{},{}", d.index, d.reliability, d.accepted)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    fn rec(r: f64, correct: bool) -> ValidationRecord {
        ValidationRecord {
            reliability: r,
            correct,
        }
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![-0.1, 1.1]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert_eq!(pv(&[0.5, 0.5]).argmax(), 0);
        assert_eq!(pv(&[0.2, 0.3, 0.5]).argmax(), 2);
    }

    #[test]
    fn confusion_examples() {
        let q = confusion_matrix(&[(pv(&[0.9, 0.1]), 0), (pv(&[0.2, 0.8]), 1)]).unwrap();
        assert_eq!(q.rows(), &[vec![0.9, 0.1], vec![0.2, 0.8]]);

        let q = confusion_matrix(&[
            (ProbabilityVector::one_hot(3, 0), 0),
            (ProbabilityVector::one_hot(3, 1), 1),
            (ProbabilityVector::one_hot(3, 2), 2),
        ])
        .unwrap();
        assert_eq!(q.rows(), &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);

        let q = confusion_matrix(&[(pv(&[1.0, 0.0]), 0), (pv(&[0.0, 1.0]), 0), (pv(&[0.0, 1.0]), 1)]).unwrap();
        assert_eq!(q.row(0).unwrap(), &[0.5, 0.5]);
        assert_eq!(q.class_counts(), &[2, 1]);
    }

    #[test]
    fn missing_class_names_the_row() {
        let err = confusion_matrix(&[(pv(&[0.5, 0.5]), 0)]).unwrap_err();
        assert!(matches!(err, Error::UndefinedRow { class: 1 }));
    }

    #[test]
    fn reliability_examples() {
        let q = confusion_matrix(&[(pv(&[1.0, 0.0]), 0), (pv(&[0.0, 1.0]), 1)]).unwrap();
        assert_eq!(label_reliability(&pv(&[1.0, 0.0]), 0, &q).unwrap(), 1.0);
        assert_eq!(label_reliability(&pv(&[1.0, 0.0]), 1, &q).unwrap(), 0.0);
        let q = confusion_matrix(&[(pv(&[0.9, 0.1]), 0), (pv(&[0.1, 0.9]), 1)]).unwrap();
        let r = label_reliability(&pv(&[0.9, 0.1]), 0, &q).unwrap();
        assert!((r - 0.82).abs() < 1e-15);
        assert!(label_reliability(&pv(&[0.9, 0.1]), 2, &q).is_err());
    }

    #[test]
    fn threshold_examples() {
        let t = optimize_threshold(&[rec(0.8, true)]).unwrap();
        assert_eq!((t.theta, t.objective_value), (0.0, 0));

        // At theta = 0.3 the incorrect record sits exactly on the boundary
        // and does not count, so 0.3 is already optimal and is the smallest.
        let recs = [rec(0.9, true), rec(0.3, false)];
        let t = optimize_threshold(&recs).unwrap();
        assert_eq!((t.theta, t.objective_value), (0.3, 0));
        assert_eq!(threshold_objective(&recs, 0.3 - THRESHOLD_EPSILON), 1);
        assert_eq!(threshold_objective(&recs, 0.3 + THRESHOLD_EPSILON), 0);

        // Both records sit on the boundary at theta = 0.5, where neither
        // counts; every other theta misplaces one of them.
        let recs = [rec(0.5, true), rec(0.5, false)];
        let t = optimize_threshold(&recs).unwrap();
        assert_eq!((t.theta, t.objective_value), (0.5, 0));
        assert_eq!(threshold_objective(&recs, 0.0), 1);
        assert_eq!(threshold_objective(&recs, 0.5 + THRESHOLD_EPSILON), 1);

        assert!(optimize_threshold(&[]).is_err());
    }

    #[test]
    fn boundary_contributes_nothing() {
        let recs = [rec(0.4, true), rec(0.4, false)];
        assert_eq!(threshold_objective(&recs, 0.4), 0);
        assert_eq!(threshold_objective(&recs, 0.5), 1);
        assert_eq!(threshold_objective(&recs, 0.3), 1);
    }

    #[test]
    fn audit_csv_layout() {
        let mut pool = LabeledDataset::new(2);
        pool.push(crate::graph::Graph::empty(1), 0, Provenance::Augmented { source: 4, iteration: 2 })
            .unwrap();
        let d = [PoolDecision {
            index: 0,
            reliability: 0.25,
            accepted: false,
        }];
        let mut buf = Vec::new();
        write_audit_csv(&pool, &d, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "graph_id,source_id,iteration,reliability,accepted\n0,4,2,0.25,false\n"
        );
    }
}
