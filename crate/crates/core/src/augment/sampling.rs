//! Weighted random sampling without replacement by sequential draws.

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Addition,
    Deletion,
}

/// Items paired with non-negative finite weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable<T> {
    entries: Vec<(T, f64)>,
    kind: WeightKind,
}

impl<T: Clone> WeightTable<T> {
    pub fn new(entries: Vec<(T, f64)>, kind: WeightKind) -> Result<Self> {
        if let Some((_, w)) = entries.iter().find(|(_, w)| !w.is_finite() || *w < 0.0) {
            return Err(Error::input(format!("invalid sampling weight {w}")));
        }
        Ok(Self { entries, kind })
    }

    /// Equal weight for every item.
    pub fn uniform(items: impl IntoIterator<Item = T>, kind: WeightKind) -> Self {
        Self {
            entries: items.into_iter().map(|t| (t, 1.0)).collect(),
            kind,
        }
    }

    pub fn entries(&self) -> &[(T, f64)] {
        &self.entries
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w).sum()
    }
}

/// Draws `k` distinct items. Each draw picks a remaining item with
/// probability proportional to its weight and removes it. When every
/// remaining weight is zero the draw is uniform over what remains.
pub fn weighted_sample_without_replacement<T, R>(
    table: &WeightTable<T>,
    k: usize,
    rng: &mut R,
) -> Result<Vec<T>>
where
    T: Clone,
    R: Rng + ?Sized,
{
    let n = table.len();
    if k > n {
        return Err(Error::Capacity {
            requested: k,
            available: n,
        });
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let total: f64 = remaining.iter().map(|&i| table.entries[i].1).sum();
        let pos = if total > 0.0 {
            let target = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (p, &i) in remaining.iter().enumerate() {
                let w = table.entries[i].1;
                if w <= 0.0 {
                    continue;
                }
                acc += w;
                pick = Some(p);
                if target < acc {
                    break;
                }
            }
            // Rounding can leave `target` at the very end; the last positive item takes it.
            pick.expect("positive total implies a positive weight")
        } else {
            rng.gen_range(0..remaining.len())
        };
        let i = remaining.remove(pos);
        out.push(table.entries[i].0.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    #[test]
    fn single_and_exhaustive_draws() {
        let mut rng = rng_from_seed(1);
        let t = WeightTable::new(vec![('a', 1.0)], WeightKind::Addition).unwrap();
        assert_eq!(weighted_sample_without_replacement(&t, 1, &mut rng).unwrap(), vec!['a']);

        let t = WeightTable::uniform(['a', 'b', 'c'], WeightKind::Addition);
        let mut got = weighted_sample_without_replacement(&t, 3, &mut rng).unwrap();
        got.sort();
        assert_eq!(got, vec!['a', 'b', 'c']);
    }

    #[test]
    fn capacity_error() {
        let t = WeightTable::uniform([1, 2], WeightKind::Deletion);
        assert!(matches!(
            weighted_sample_without_replacement(&t, 3, &mut rng_from_seed(0)),
            Err(Error::Capacity { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightTable::new(vec![(0, -1.0)], WeightKind::Addition).is_err());
        assert!(WeightTable::new(vec![(0, f64::NAN)], WeightKind::Addition).is_err());
    }

    #[test]
    fn three_to_one_ratio() {
        let t = WeightTable::new(vec![('a', 3.0), ('b', 1.0)], WeightKind::Addition).unwrap();
        let mut rng = rng_from_seed(2024);
        let trials = 100_000;
        let hits = (0..trials)
            .filter(|_| weighted_sample_without_replacement(&t, 1, &mut rng).unwrap()[0] == 'a')
            .count();
        let p = hits as f64 / trials as f64;
        assert!((p - 0.75).abs() < 0.01, "{p}");
    }

    #[test]
    fn zero_weights_never_drawn_while_positive_remain() {
        let t = WeightTable::new(vec![(0, 0.0), (1, 2.0), (2, 0.0)], WeightKind::Addition).unwrap();
        let mut rng = rng_from_seed(5);
        for _ in 0..1000 {
            let s = weighted_sample_without_replacement(&t, 2, &mut rng).unwrap();
            assert_eq!(s[0], 1);
            assert_ne!(s[1], 1);
        }
    }
}
