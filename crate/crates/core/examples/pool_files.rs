//! Augment a dataset once, save the pool in the text format, and read it
//! back. Each pool graph remembers which original it came from.

use std::path::PathBuf;

use mevolve::augment::{augment_dataset, AugmentConfig, Mapping};
use mevolve::data::{load_pool, load_tu_dataset, save_pool, Provenance};

fn main() -> mevolve::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG");
    let d = load_tu_dataset(dir, "MUTAG")?.dataset;

    let cfg = AugmentConfig::new(Mapping::VertexSimilarity);
    let pooled = augment_dataset(&d, &cfg, 7, 1);
    println!(
        "{} of {} graphs augmented, {} edges swapped in total",
        pooled.pool.len(),
        d.len(),
        pooled.edits
    );

    let path = std::env::temp_dir().join("mevolve-example.pool");
    save_pool(&pooled.pool, &path)?;
    let back = load_pool(&path)?;
    assert_eq!(back, pooled.pool);

    let text = std::fs::read_to_string(&path).expect("just written");
    println!("{} bytes; header and first graph:", text.len());
    for line in text.lines().take(4 + pooled.pool.graphs()[0].edge_count()) {
        println!("  {line}");
    }
    if let Provenance::Augmented { source, iteration } = back.provenance()[0] {
        println!("pool[0] derives from original graph {source} in iteration {iteration}");
    }
    std::fs::remove_file(&path).ok();
    Ok(())
}
