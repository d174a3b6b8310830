//! Seeded random instance generators for sweeps and test suites.
//!
//! All generators draw from caller-supplied RNGs in a fixed call order, so a
//! fixed seed reproduces the exact same instances byte for byte.

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::Rng;

use crate::dist::{IntDist, Rational};
use crate::rearrange::plus_form_of_multiset;

/// Support values are drawn from `[-MAX_ABS_VALUE, MAX_ABS_VALUE]`.
pub const MAX_ABS_VALUE: i64 = 6;
/// At most this many atoms per generated distribution.
pub const MAX_ATOMS: usize = 6;
/// Integer weights are drawn from `[1, MAX_WEIGHT]` and normalized.
pub const MAX_WEIGHT: u32 = 64;

/// A random distribution: `N ∈ [1, 6]` distinct values in `[-6, 6]`,
/// positive integer weights `≤ 64`, normalized to total mass 1.
pub fn random_dist<R: Rng + ?Sized>(rng: &mut R) -> IntDist {
    let n = rng.gen_range(1..=MAX_ATOMS);
    let values = distinct_values(rng, n);
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=MAX_WEIGHT)).collect();
    dist_from_weights(values, &weights)
}

/// Like [`random_dist`] but weights are drawn from a two-value pool, so
/// duplicated probabilities are guaranteed whenever `N ≥ 3` (and forced for
/// `N = 2`).
pub fn random_dist_with_ties<R: Rng + ?Sized>(rng: &mut R) -> IntDist {
    let n = rng.gen_range(2..=MAX_ATOMS);
    let values = distinct_values(rng, n);
    let pool = [rng.gen_range(1..=MAX_WEIGHT), rng.gen_range(1..=MAX_WEIGHT)];
    let mut weights: Vec<u32> = (0..n).map(|_| pool[rng.gen_range(0..2)]).collect();
    weights[1] = weights[0];
    dist_from_weights(values, &weights)
}

/// A random probability multiset of size `N ∈ [1, 6]` (weights `≤ 64`,
/// normalized), returned sorted non-increasingly.
pub fn random_prob_multiset<R: Rng + ?Sized>(rng: &mut R) -> Vec<Rational> {
    let n = rng.gen_range(1..=MAX_ATOMS);
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=MAX_WEIGHT)).collect();
    let total: u32 = weights.iter().sum();
    let mut probs: Vec<Rational> = weights
        .into_iter()
        .map(|w| Ratio::new(BigInt::from(w), BigInt::from(total)))
        .collect();
    probs.sort_by(|a, b| b.cmp(a));
    probs
}

/// A random distribution already in plus form.
pub fn random_plus_form<R: Rng + ?Sized>(rng: &mut R) -> IntDist {
    let probs = random_prob_multiset(rng);
    plus_form_of_multiset(&probs)
}

/// A random distribution whose support has at least one gap of length ≥ 2.
///
/// Such a distribution can never be a translate or reflection of its plus
/// form: the plus form's support is a contiguous window, and translation and
/// reflection preserve gap structure.
pub fn random_gapped_dist<R: Rng + ?Sized>(rng: &mut R) -> IntDist {
    loop {
        let n = rng.gen_range(2..=MAX_ATOMS);
        let values = distinct_values(rng, n);
        if values.windows(2).any(|w| w[1] - w[0] >= 2) {
            let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=MAX_WEIGHT)).collect();
            return dist_from_weights(values, &weights);
        }
    }
}

fn distinct_values<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<i64> {
    let mut pool: Vec<i64> = (-MAX_ABS_VALUE..=MAX_ABS_VALUE).collect();
    for i in 0..n {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    let mut values = pool[..n].to_vec();
    values.sort_unstable();
    values
}

fn dist_from_weights(values: Vec<i64>, weights: &[u32]) -> IntDist {
    let total: u32 = weights.iter().sum();
    let atoms = values
        .into_iter()
        .zip(weights)
        .map(|(x, &w)| (x, Ratio::new(BigInt::from(w), BigInt::from(total))))
        .collect();
    IntDist::new(atoms).expect("generated atoms are valid by construction")
}
