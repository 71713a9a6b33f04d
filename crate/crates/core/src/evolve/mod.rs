//! The evolution loop: pre-train, then repeatedly augment the training set,
//! score the pool against a reliability threshold learnt on the validation
//! set, merge what passes and retrain from scratch.

mod report;
mod split;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{write_report, ExperimentReport, TrialFailure, TrialRecord, REPORT_SCHEMA_VERSION};
pub use split::{stratified_split, Split, SplitFractions};

use crate::augment::{augment_dataset, AugmentConfig, GraphMapping};
use crate::data::LabeledDataset;
use crate::error::{Error, Result};
use crate::filtration::{calibrate, filter_pool};
use crate::models::{accuracy, GraphClassifier, ModelConfig, SpectralClassifier};
use crate::seed::{derive_seed, substream};

/// Which training set each iteration augments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PoolSource {
    /// The grown training set, so accepted graphs can be re-augmented.
    #[default]
    Current,
    /// Always the original training split.
    Original,
}

/// How pool examples are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FilterPolicy {
    /// Keep examples whose label reliability exceeds the learnt threshold.
    #[default]
    Reliability,
    /// Keep everything.
    AcceptAll,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub augment: AugmentConfig,
    pub model: ModelConfig,
    pub iterations: usize,
    pub split: SplitFractions,
    pub trials: usize,
    pub rng_seed: u64,
    pub pool_source: PoolSource,
    pub filter: FilterPolicy,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self {
            augment: AugmentConfig::default(),
            model: ModelConfig::default(),
            iterations: 5,
            split: SplitFractions::default(),
            trials: 10,
            rng_seed: 0,
            pool_source: PoolSource::Current,
            filter: FilterPolicy::Reliability,
        }
    }
}

impl EvolveConfig {
    pub fn validate(&self) -> Result<()> {
        self.augment.validate()?;
        self.split.validate()?;
        if self.iterations == 0 {
            return Err(Error::input("at least one iteration is required"));
        }
        if self.trials == 0 {
            return Err(Error::input("at least one trial is required"));
        }
        if self.model.embedding_dim == 0 || self.model.knn_k == 0 {
            return Err(Error::input("embedding dimension and k must be positive"));
        }
        Ok(())
    }
}

/// Loop settings that do not depend on the model or mapping type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopOptions {
    pub iterations: usize,
    pub seed: u64,
    pub pool_source: PoolSource,
    pub filter: FilterPolicy,
}

impl From<&EvolveConfig> for LoopOptions {
    fn from(cfg: &EvolveConfig) -> Self {
        Self {
            iterations: cfg.iterations,
            seed: cfg.rng_seed,
            pool_source: cfg.pool_source,
            filter: cfg.filter,
        }
    }
}

/// One pass of the loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: u32,
    pub train_size_before: usize,
    pub pool_size: usize,
    pub skipped: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub theta: f64,
    pub theta_objective: usize,
    /// Validation accuracy of the classifier that scored the pool.
    pub scoring_val_accuracy: f64,
    /// Validation accuracy after retraining on the merged set.
    pub val_accuracy: f64,
    pub train_size_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolveReport {
    pub train_size: usize,
    pub val_size: usize,
    pub test_size: usize,
    pub original_val_accuracy: f64,
    pub original_test_accuracy: Option<f64>,
    pub evolved_test_accuracy: Option<f64>,
    pub iterations: Vec<IterationRecord>,
}

impl EvolveReport {
    pub fn rimp(&self) -> Option<Result<f64>> {
        Some(rimp(self.evolved_test_accuracy?, self.original_test_accuracy?))
    }
}

/// Result of [`evolve_with`]: the report plus the final training multiset.
#[derive(Debug, Clone)]
pub struct EvolveOutcome {
    pub report: EvolveReport,
    pub training_set: LabeledDataset,
}

/// Relative improvement `(evolved − original) / original`.
pub fn rimp(acc_evolved: f64, acc_original: f64) -> Result<f64> {
    if acc_original == 0.0 {
        return Err(Error::UndefinedRimp);
    }
    Ok((acc_evolved - acc_original) / acc_original)
}

/// Runs the loop on fixed splits with any classifier and mapping.
/// `classifier` ends up trained on the final training set; when `test` is
/// given, accuracies before and after are recorded.
pub fn evolve_with<C, M>(
    train: &LabeledDataset,
    val: &LabeledDataset,
    test: Option<&LabeledDataset>,
    classifier: &mut C,
    mapping: &M,
    opts: LoopOptions,
) -> Result<EvolveOutcome>
where
    C: GraphClassifier + ?Sized,
    M: GraphMapping + ?Sized,
{
    if opts.iterations == 0 {
        return Err(Error::input("at least one iteration is required"));
    }
    if train.is_empty() || val.is_empty() {
        return Err(Error::input("training and validation sets must be non-empty"));
    }
    classifier.fit(train)?;
    let original_val_accuracy = accuracy(classifier, val)?;
    let original_test_accuracy = test.map(|t| accuracy(classifier, t)).transpose()?;

    let mut current = train.clone();
    let mut iterations = Vec::with_capacity(opts.iterations);
    let mut feasible_any = false;
    for t in 1..=opts.iterations {
        let iteration = t as u32;
        let source = match opts.pool_source {
            PoolSource::Current => &current,
            PoolSource::Original => train,
        };
        let pooled = augment_dataset(source, mapping, opts.seed, iteration);
        feasible_any |= !pooled.pool.is_empty();

        let (q, _, threshold) = calibrate(classifier, val)?;
        let scoring_val_accuracy = accuracy(classifier, val)?;
        let (accepted, rejected) = if pooled.pool.is_empty() {
            (LabeledDataset::new(train.class_count()), 0)
        } else {
            match opts.filter {
                FilterPolicy::Reliability => {
                    let out = filter_pool(&pooled.pool, classifier, &q, threshold.theta)?;
                    let rejected = out.rejected.len();
                    (out.accepted, rejected)
                }
                FilterPolicy::AcceptAll => (pooled.pool.clone(), 0),
            }
        };
        let train_size_before = current.len();
        current.extend_from(&accepted);
        if accepted.is_empty() {
            info!("iteration {iteration}: no pool example passed the filter");
        }
        classifier.fit(&current)?;
        let record = IterationRecord {
            iteration,
            train_size_before,
            pool_size: pooled.pool.len(),
            skipped: pooled.skipped.len(),
            accepted: accepted.len(),
            rejected,
            theta: threshold.theta,
            theta_objective: threshold.objective_value,
            scoring_val_accuracy,
            val_accuracy: accuracy(classifier, val)?,
            train_size_after: current.len(),
        };
        info!(
            "iteration {iteration}: pool {} accepted {} theta {:.6} val acc {:.4}",
            record.pool_size, record.accepted, record.theta, record.val_accuracy
        );
        iterations.push(record);
    }
    if !feasible_any {
        return Err(Error::input(format!(
            "{} could not augment any training graph",
            mapping.describe()
        )));
    }
    let evolved_test_accuracy = test.map(|t| accuracy(classifier, t)).transpose()?;
    Ok(EvolveOutcome {
        report: EvolveReport {
            train_size: train.len(),
            val_size: val.len(),
            test_size: test.map_or(0, LabeledDataset::len),
            original_val_accuracy,
            original_test_accuracy,
            evolved_test_accuracy,
            iterations,
        },
        training_set: current,
    })
}

const SPLIT_TAG: u64 = 0x5350_4c49;
const LOOP_TAG: u64 = 0x4c4f_4f50;

/// Splits `d`, builds the configured classifier and mapping, and runs the
/// loop with the test split held out.
pub fn m_evolve(d: &LabeledDataset, cfg: &EvolveConfig) -> Result<(SpectralClassifier, EvolveReport)> {
    let mut model = cfg.model.build();
    let report = m_evolve_with(d, cfg, &mut model, &cfg.augment)?;
    Ok((model, report))
}

pub fn m_evolve_with<C, M>(d: &LabeledDataset, cfg: &EvolveConfig, classifier: &mut C, mapping: &M) -> Result<EvolveReport>
where
    C: GraphClassifier + ?Sized,
    M: GraphMapping + ?Sized,
{
    cfg.validate()?;
    let split = stratified_split(d, cfg.split, &mut substream(cfg.rng_seed, &[SPLIT_TAG]))?;
    let (train, val, test) = (d.subset(&split.train), d.subset(&split.val), d.subset(&split.test));
    let opts = LoopOptions {
        seed: derive_seed(cfg.rng_seed, &[LOOP_TAG]),
        ..LoopOptions::from(cfg)
    };
    Ok(evolve_with(&train, &val, Some(&test), classifier, mapping, opts)?.report)
}

/// Seed of trial `index` under master seed `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    derive_seed(seed, &[index as u64])
}

/// Repeated seeded holdout with the configured classifier and mapping.
pub fn run_experiment(d: &LabeledDataset, cfg: &EvolveConfig) -> Result<ExperimentReport> {
    let mapping = cfg.augment.clone();
    run_experiment_with(d, cfg, || cfg.model.build(), &mapping)
}

/// As [`run_experiment`] with a caller-supplied classifier factory and
/// mapping. Trials run in parallel; each is a pure function of its seed.
pub fn run_experiment_with<F, C, M>(
    d: &LabeledDataset,
    cfg: &EvolveConfig,
    make_classifier: F,
    mapping: &M,
) -> Result<ExperimentReport>
where
    F: Fn() -> C + Sync,
    C: GraphClassifier,
    M: GraphMapping + ?Sized,
{
    cfg.validate()?;
    let outcomes: Vec<(usize, u64, Result<EvolveReport>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(cfg.rng_seed, i);
            let trial_cfg = EvolveConfig {
                rng_seed: seed,
                ..cfg.clone()
            };
            let mut c = make_classifier();
            (i, seed, m_evolve_with(d, &trial_cfg, &mut c, mapping))
        })
        .collect();

    let mut trials = Vec::new();
    let mut failures = Vec::new();
    for (index, seed, res) in outcomes {
        let res = res.and_then(|report| {
            let original = report.original_test_accuracy.expect("test split is always evaluated");
            let evolved = report.evolved_test_accuracy.expect("test split is always evaluated");
            Ok(TrialRecord {
                index,
                seed,
                original_test_accuracy: original,
                evolved_test_accuracy: evolved,
                rimp: rimp(evolved, original)?,
                report,
            })
        });
        match res {
            Ok(t) => trials.push(t),
            Err(e) => {
                warn!("trial {index} (seed {seed}) failed and is excluded: {e}");
                failures.push(TrialFailure {
                    index,
                    seed,
                    error: e.to_string(),
                });
            }
        }
    }
    if trials.is_empty() {
        return Err(Error::input(format!(
            "all {} trials failed; first error: {}",
            failures.len(),
            failures.first().map_or("none", |f| f.error.as_str())
        )));
    }
    Ok(ExperimentReport::aggregate(cfg.clone(), trials, failures))
}
