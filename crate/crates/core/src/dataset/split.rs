use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::DatasetError;

pub const DEFAULT_FRACTIONS: [f64; 3] = [0.90, 0.05, 0.05];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSplit {
    pub train: BTreeSet<String>,
    pub validation: BTreeSet<String>,
    pub evaluation: BTreeSet<String>,
    pub seed: u64,
}

/// Part sizes for `n` items: floors first, then the leftover items go to
/// the parts with the largest fractional remainders (earlier part on ties).
pub fn split_sizes(n: usize, fractions: [f64; 3]) -> Result<[usize; 3], DatasetError> {
    let sum: f64 = fractions.iter().sum();
    if fractions.iter().any(|f| !(*f > 0.0)) || (sum - 1.0).abs() > 1e-9 {
        return Err(DatasetError::BadFractions(fractions));
    }
    let exact = fractions.map(|f| n as f64 * f);
    let mut sizes = exact.map(|e| e.floor() as usize);
    let mut leftover = n - sizes.iter().sum::<usize>().min(n);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())));
    for &i in order.iter().cycle() {
        if leftover == 0 {
            break;
        }
        sizes[i] += 1;
        leftover -= 1;
    }
    Ok(sizes)
}

/// Seeded train/validation/evaluation partition of `clip_ids`.
///
/// Ids are sorted before shuffling so the result depends only on the id set
/// and the seed.
pub fn random_split(
    clip_ids: &[String],
    fractions: [f64; 3],
    seed: u64,
) -> Result<DatasetSplit, DatasetError> {
    let mut ids: Vec<&String> = clip_ids.iter().collect();
    ids.sort();
    if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
        return Err(DatasetError::DuplicateClip(w[0].clone()));
    }
    let [n_train, n_val, _] = split_sizes(ids.len(), fractions)?;
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let take = |range: std::ops::Range<usize>| ids[range].iter().map(|s| s.to_string()).collect();
    Ok(DatasetSplit {
        train: take(0..n_train),
        validation: take(n_train..n_train + n_val),
        evaluation: take(n_train + n_val..ids.len()),
        seed,
    })
}
