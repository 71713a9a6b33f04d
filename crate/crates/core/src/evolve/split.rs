use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::LabeledDataset;
use crate::error::{Error, Result};

/// Train/validation/test proportions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitFractions {
    pub train: f64,
    pub val: f64,
    pub test: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        Self {
            train: 0.7,
            val: 0.1,
            test: 0.2,
        }
    }
}

impl SplitFractions {
    pub fn validate(&self) -> Result<()> {
        let f = [self.train, self.val, self.test];
        if f.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::input(format!("split fractions must be positive, got {f:?}")));
        }
        let sum: f64 = f.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::input(format!("split fractions sum to {sum}, expected 1")));
        }
        Ok(())
    }

    fn as_array(&self) -> [f64; 3] {
        [self.train, self.val, self.test]
    }
}

/// Disjoint index lists covering a dataset, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub val: Vec<usize>,
    pub test: Vec<usize>,
}

impl Split {
    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.train.len(), self.val.len(), self.test.len())
    }
}

/// Per-class allocation of `count` items by the largest-remainder rule,
/// then adjusted so every part gets at least one item.
pub(crate) fn allocate(count: usize, fractions: [f64; 3]) -> [usize; 3] {
    let ideal = fractions.map(|f| f * count as f64);
    let mut alloc = ideal.map(|x| x.floor() as usize);
    let mut order = [0, 1, 2];
    // Stable sort keeps train < val < test among equal remainders.
    order.sort_by(|&a, &b| (ideal[b] - ideal[b].floor()).total_cmp(&(ideal[a] - ideal[a].floor())));
    let mut left = count - alloc.iter().sum::<usize>();
    for &s in order.iter().cycle() {
        if left == 0 {
            break;
        }
        alloc[s] += 1;
        left -= 1;
    }
    for s in 0..3 {
        if alloc[s] == 0 {
            let donor = (0..3).max_by_key(|&d| (alloc[d], std::cmp::Reverse(d))).unwrap();
            alloc[donor] -= 1;
            alloc[s] += 1;
        }
    }
    alloc
}

/// Stratified split: each class is shuffled and cut according to
/// [`allocate`], so every class appears in all three parts.
pub fn stratified_split<R: Rng + ?Sized>(
    d: &LabeledDataset,
    fractions: SplitFractions,
    rng: &mut R,
) -> Result<Split> {
    fractions.validate()?;
    let mut split = Split {
        train: Vec::new(),
        val: Vec::new(),
        test: Vec::new(),
    };
    for class in 0..d.class_count() {
        let mut members: Vec<usize> = (0..d.len()).filter(|&i| d.labels()[i] == class).collect();
        if members.len() < 3 {
            return Err(Error::Split(format!(
                "class {class} has {} examples, at least 3 are needed",
                members.len()
            )));
        }
        members.shuffle(rng);
        let [a, b, _] = allocate(members.len(), fractions.as_array());
        split.train.extend_from_slice(&members[..a]);
        split.val.extend_from_slice(&members[a..a + b]);
        split.test.extend_from_slice(&members[a + b..]);
    }
    split.train.sort_unstable();
    split.val.sort_unstable();
    split.test.sort_unstable();
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::seed::rng_from_seed;

    fn dataset(per_class: &[usize]) -> LabeledDataset {
        let mut graphs = Vec::new();
        let mut labels = Vec::new();
        for (c, &n) in per_class.iter().enumerate() {
            for _ in 0..n {
                graphs.push(Graph::empty(1));
                labels.push(c);
            }
        }
        LabeledDataset::from_parts(graphs, labels, per_class.len()).unwrap()
    }

    #[test]
    fn exact_fractions() {
        let s = stratified_split(&dataset(&[10]), SplitFractions::default(), &mut rng_from_seed(1)).unwrap();
        assert_eq!(s.sizes(), (7, 1, 2));
    }

    #[test]
    fn mutag_sized_classes() {
        // 125 / 63 is the MUTAG class balance.
        let s = stratified_split(&dataset(&[125, 63]), SplitFractions::default(), &mut rng_from_seed(1)).unwrap();
        let (a, b, c) = s.sizes();
        assert!((131..=132).contains(&a) && (18..=19).contains(&b) && (37..=38).contains(&c));
        assert_eq!(a + b + c, 188);
    }

    #[test]
    fn small_classes_still_reach_every_part() {
        assert_eq!(allocate(3, [0.7, 0.1, 0.2]), [1, 1, 1]);
        assert_eq!(allocate(4, [0.7, 0.1, 0.2]), [2, 1, 1]);
        let s = stratified_split(&dataset(&[3, 3]), SplitFractions::default(), &mut rng_from_seed(0)).unwrap();
        assert_eq!(s.sizes(), (2, 2, 2));
    }

    #[test]
    fn tiny_class_is_an_error() {
        let err = stratified_split(&dataset(&[5, 2]), SplitFractions::default(), &mut rng_from_seed(0)).unwrap_err();
        assert!(err.to_string().contains("class 1"), "{err}");
    }

    #[test]
    fn deterministic_and_disjoint() {
        let d = dataset(&[40, 27, 9]);
        let a = stratified_split(&d, SplitFractions::default(), &mut rng_from_seed(5)).unwrap();
        let b = stratified_split(&d, SplitFractions::default(), &mut rng_from_seed(5)).unwrap();
        assert_eq!(a, b);
        let mut all: Vec<usize> = a.train.iter().chain(&a.val).chain(&a.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..d.len()).collect::<Vec<_>>());
    }

    #[test]
    fn bad_fractions() {
        let f = SplitFractions { train: 0.7, val: 0.1, test: 0.3 };
        assert!(f.validate().is_err());
        let f = SplitFractions { train: 0.9, val: 0.0, test: 0.1 };
        assert!(f.validate().is_err());
    }
}
