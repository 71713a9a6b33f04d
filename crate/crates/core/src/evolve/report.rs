//! Experiment reports as JSON Lines: one `header` record with the resolved
//! configuration, then per trial its `iteration` records and a `trial`
//! record, failed trials as `failure` records, and a closing `summary`.
//! Records are written in trial order, so equal inputs give equal bytes.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use super::{EvolveConfig, EvolveReport};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub original_test_accuracy: f64,
    pub evolved_test_accuracy: f64,
    pub rimp: f64,
    pub report: EvolveReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialFailure {
    pub index: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: EvolveConfig,
    pub trials: Vec<TrialRecord>,
    pub failures: Vec<TrialFailure>,
    pub mean_original_accuracy: f64,
    pub std_original_accuracy: f64,
    pub mean_evolved_accuracy: f64,
    pub std_evolved_accuracy: f64,
    pub mean_rimp: f64,
}

/// Mean and sample standard deviation (0 for a single value).
fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

impl ExperimentReport {
    pub(crate) fn aggregate(config: EvolveConfig, trials: Vec<TrialRecord>, failures: Vec<TrialFailure>) -> Self {
        let orig: Vec<f64> = trials.iter().map(|t| t.original_test_accuracy).collect();
        let evo: Vec<f64> = trials.iter().map(|t| t.evolved_test_accuracy).collect();
        let rimps: Vec<f64> = trials.iter().map(|t| t.rimp).collect();
        let (mean_original_accuracy, std_original_accuracy) = mean_std(&orig);
        let (mean_evolved_accuracy, std_evolved_accuracy) = mean_std(&evo);
        Self {
            config,
            trials,
            failures,
            mean_original_accuracy,
            std_original_accuracy,
            mean_evolved_accuracy,
            std_evolved_accuracy,
            mean_rimp: mean_std(&rimps).0,
        }
    }
}

pub fn write_report<W: Write>(report: &ExperimentReport, mut w: W) -> std::io::Result<()> {
    let mut line = |v: serde_json::Value| -> std::io::Result<()> {
        serde_json::to_writer(&mut w, &v)?;
        w.write_all(b"\n")
    };
    line(json!({
        "record": "header",
        "format": "mevolve-report",
        "version": REPORT_SCHEMA_VERSION,
        "config": report.config,
    }))?;
    for t in &report.trials {
        for it in &t.report.iterations {
            line(json!({ "record": "iteration", "trial": t.index, "data": it }))?;
        }
        line(json!({
            "record": "trial",
            "trial": t.index,
            "seed": t.seed,
            "train_size": t.report.train_size,
            "val_size": t.report.val_size,
            "test_size": t.report.test_size,
            "original_val_accuracy": t.report.original_val_accuracy,
            "original_test_accuracy": t.original_test_accuracy,
            "evolved_test_accuracy": t.evolved_test_accuracy,
            "rimp": t.rimp,
        }))?;
    }
    for f in &report.failures {
        line(json!({ "record": "failure", "data": f }))?;
    }
    line(json!({
        "record": "summary",
        "trials": report.trials.len(),
        "failed_trials": report.failures.len(),
        "mean_original_accuracy": report.mean_original_accuracy,
        "std_original_accuracy": report.std_original_accuracy,
        "mean_evolved_accuracy": report.mean_evolved_accuracy,
        "std_evolved_accuracy": report.std_evolved_accuracy,
        "mean_rimp": report.mean_rimp,
    }))?;
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_std() {
        assert_eq!(mean_std(&[0.5]), (0.5, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
