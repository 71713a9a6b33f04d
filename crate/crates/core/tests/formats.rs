use std::path::PathBuf;

use mevolve::data::{load_pool, load_tu_dataset, write_pool, Provenance};
use mevolve::graph::Graph;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures")
}

#[test]
fn sample_pool_parses_and_rewrites_byte_for_byte() {
    let path = fixtures().join("sample.pool");
    let pool = load_pool(&path).unwrap();
    assert_eq!(pool.len(), 3);
    assert_eq!(pool.class_count(), 2);
    assert_eq!(pool.labels(), &[0, 1, 1]);
    assert_eq!(pool.graphs()[0], Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
    assert_eq!(pool.graphs()[1], Graph::from_edges(4, [(0, 1), (0, 3), (1, 2)]).unwrap());
    assert_eq!(pool.graphs()[2], Graph::empty(2));
    assert_eq!(
        pool.provenance(),
        &[
            Provenance::Original { id: 0 },
            Provenance::Augmented { source: 5, iteration: 2 },
            Provenance::Original { id: 9 }
        ]
    );
    let mut bytes = Vec::new();
    write_pool(&pool, &mut bytes).unwrap();
    assert_eq!(bytes, std::fs::read(&path).unwrap());
}

#[test]
fn toy_tu_dataset() {
    let tu = load_tu_dataset(fixtures().join("TOY"), "TOY").unwrap();
    let d = &tu.dataset;
    assert_eq!(tu.label_values, vec![1, 2]);
    assert_eq!(d.labels(), &[0, 1, 0, 1]);
    let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(d.graphs()[0], k4);
    assert_eq!(d.graphs()[2], Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap());
    assert!(d.provenance().iter().enumerate().all(|(i, p)| *p == Provenance::Original { id: i }));
}
