//! Train the spectral classifier on a stratified MUTAG split, evaluate it,
//! and round-trip the trained model through a file.

use std::path::PathBuf;

use mevolve::data::load_tu_dataset;
use mevolve::evolve::{stratified_split, SplitFractions};
use mevolve::models::{accuracy, load_model, save_model, ClassifierKind, GraphClassifier, ModelConfig};
use mevolve::seed::rng_from_seed;

fn main() -> mevolve::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG");
    let d = load_tu_dataset(dir, "MUTAG")?.dataset;
    let split = stratified_split(&d, SplitFractions::default(), &mut rng_from_seed(0))?;
    let (train, test) = (d.subset(&split.train), d.subset(&split.test));

    for kind in [ClassifierKind::Knn, ClassifierKind::Logistic] {
        let mut model = ModelConfig {
            classifier: kind,
            ..ModelConfig::default()
        }
        .build();
        model.fit(&train)?;
        println!("{kind:<8} train {:.3}  test {:.3}", accuracy(&model, &train)?, accuracy(&model, &test)?);

        let path = std::env::temp_dir().join(format!("mevolve-{kind}.json"));
        save_model(&model, &path)?;
        let back = load_model(&path)?;
        assert_eq!(back, model);
        let p = back.predict_proba(&test.graphs()[0])?;
        println!("         reloaded from {}, p(test[0]) = {:?}", path.display(), p.as_slice());
        std::fs::remove_file(&path).ok();
    }
    Ok(())
}
