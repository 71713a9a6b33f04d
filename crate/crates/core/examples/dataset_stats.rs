//! Load a TU-format dataset and print its size profile.
//!
//!     cargo run --example dataset_stats [DIR NAME]

use std::path::PathBuf;

use mevolve::data::{dataset_stats, load_tu_dataset};

fn main() -> mevolve::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG"));
    let name = args.next().unwrap_or_else(|| "MUTAG".into());

    let tu = load_tu_dataset(&dir, &name)?;
    let s = dataset_stats(&tu.dataset)?;
    println!("{name}: {} graphs, {} classes", s.graph_count, s.class_count);
    println!("  vertices  avg {:.2}  min {}  max {}", s.avg_vertices, s.min_vertices, s.max_vertices);
    println!("  edges     avg {:.2}  min {}  max {}", s.avg_edges, s.min_edges, s.max_edges);
    println!("  majority class share {:.1}%", s.bias * 100.0);
    for (class, count) in tu.dataset.class_histogram().iter().enumerate() {
        println!("  class {class} (raw label {}): {count}", tu.label_values[class]);
    }
    if !tu.ignored_files.is_empty() {
        println!("  not read: {}", tu.ignored_files.join(", "));
    }
    Ok(())
}
