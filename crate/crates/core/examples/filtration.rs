//! One filtration step by hand: calibrate on the validation split, score an
//! augmented pool, and write the audit trail as CSV to stdout.

use std::path::PathBuf;

use mevolve::augment::{augment_dataset, AugmentConfig};
use mevolve::data::load_tu_dataset;
use mevolve::evolve::{stratified_split, SplitFractions};
use mevolve::filtration::{calibrate, filter_pool, write_audit_csv};
use mevolve::models::{GraphClassifier, ModelConfig};
use mevolve::seed::rng_from_seed;

fn main() -> mevolve::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG");
    let d = load_tu_dataset(dir, "MUTAG")?.dataset;
    let split = stratified_split(&d, SplitFractions::default(), &mut rng_from_seed(1))?;
    let (train, val) = (d.subset(&split.train), d.subset(&split.val));

    let mut model = ModelConfig::default().build();
    model.fit(&train)?;

    let (q, records, threshold) = calibrate(&model, &val)?;
    for (c, row) in q.rows().iter().enumerate() {
        eprintln!("Q[{c}] = {row:.3?}");
    }
    let correct = records.iter().filter(|r| r.correct).count();
    eprintln!(
        "validation: {correct}/{} correct, theta = {:.4} ({} misplaced)",
        records.len(),
        threshold.theta,
        threshold.objective_value
    );

    let pooled = augment_dataset(&train, &AugmentConfig::default(), 1, 1);
    let out = filter_pool(&pooled.pool, &model, &q, threshold.theta)?;
    eprintln!("pool {}: accepted {}, rejected {}", pooled.pool.len(), out.accepted.len(), out.rejected.len());

    write_audit_csv(&pooled.pool, &out.decisions, std::io::stdout().lock()).expect("stdout");
    Ok(())
}
