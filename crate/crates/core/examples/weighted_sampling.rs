//! Sequential weighted sampling without replacement, checked against the
//! analytic first-draw probabilities.

use mevolve::augment::{weighted_sample_without_replacement, WeightKind, WeightTable};
use mevolve::seed::rng_from_seed;

fn main() -> mevolve::Result<()> {
    let weights = [("a", 5.0), ("b", 3.0), ("c", 1.5), ("d", 0.5), ("e", 0.0)];
    let table = WeightTable::new(weights.to_vec(), WeightKind::Addition)?;
    let total = table.total();

    let trials = 200_000;
    let mut rng = rng_from_seed(1);
    let mut first = vec![0usize; weights.len()];
    for _ in 0..trials {
        let pick = weighted_sample_without_replacement(&table, 1, &mut rng)?[0];
        first[weights.iter().position(|(n, _)| *n == pick).unwrap()] += 1;
    }
    println!("item  weight  expected  observed");
    for ((name, w), c) in weights.iter().zip(&first) {
        println!("{name:>4}  {w:>6.1}  {:>8.4}  {:>8.4}", w / total, *c as f64 / trials as f64);
    }

    // Zero-weight items are only drawn once everything else is gone.
    let all = weighted_sample_without_replacement(&table, 5, &mut rng)?;
    println!("full draw: {all:?}");
    Ok(())
}
