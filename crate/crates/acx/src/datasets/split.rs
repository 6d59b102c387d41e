//! Deterministic 80/10/10 instance splits.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Disjoint train/validation/test instance ids covering the instance set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndex {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

impl SplitIndex {
    pub fn len(&self) -> usize {
        self.train.len() + self.validation.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shuffle the instances with the seed, then cut 80/10/10 with the division
/// remainder going to train. Validation and test each get round(n / 10).
pub fn split(instances: &[usize], seed: u64) -> Result<SplitIndex> {
    if instances.len() < 10 {
        return Err(Error::Usage(format!(
            "split requires at least 10 instances, got {}",
            instances.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shuffled = instances.to_vec();
    shuffled.shuffle(&mut rng);
    let n = shuffled.len();
    let tenth = (n as f64 / 10.0).round() as usize;
    let train_end = n - 2 * tenth;
    let mut train = shuffled[..train_end].to_vec();
    let mut validation = shuffled[train_end..train_end + tenth].to_vec();
    let mut test = shuffled[train_end + tenth..].to_vec();
    train.sort_unstable();
    validation.sort_unstable();
    test.sort_unstable();
    Ok(SplitIndex {
        train,
        validation,
        test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn hundred_instances_split_80_10_10() {
        let ids: Vec<usize> = (0..100).collect();
        let s = split(&ids, 3).unwrap();
        assert_eq!(s.train.len(), 80);
        assert_eq!(s.validation.len(), 10);
        assert_eq!(s.test.len(), 10);
    }

    #[test]
    fn same_seed_gives_identical_split() {
        let ids: Vec<usize> = (0..37).collect();
        assert_eq!(split(&ids, 8).unwrap(), split(&ids, 8).unwrap());
        assert_ne!(split(&ids, 8).unwrap(), split(&ids, 9).unwrap());
    }

    #[test]
    fn remainder_goes_to_train() {
        let ids: Vec<usize> = (0..4337).collect();
        let s = split(&ids, 1).unwrap();
        assert_eq!(s.train.len(), 3469);
        assert_eq!(s.validation.len(), 434);
        assert_eq!(s.test.len(), 434);
    }

    #[test]
    fn parts_are_disjoint_and_cover() {
        let ids: Vec<usize> = (0..53).map(|i| i * 3).collect();
        let s = split(&ids, 5).unwrap();
        let mut all: Vec<usize> = s
            .train
            .iter()
            .chain(&s.validation)
            .chain(&s.test)
            .copied()
            .collect();
        all.sort_unstable();
        let mut expected = ids.clone();
        expected.sort_unstable();
        assert_eq!(all, expected);
        let set: HashSet<usize> = all.iter().copied().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn too_few_instances_is_an_error() {
        let ids: Vec<usize> = (0..9).collect();
        assert!(split(&ids, 0).is_err());
    }
}
