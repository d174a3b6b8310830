//! Finite integer-supported distributions with exact rational probabilities.
//!
//! No floating point enters this module: probabilities are
//! arbitrary-precision rationals and every statistic (mean, variance,
//! median set, mean absolute deviation) is computed exactly.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational number.
pub type Rational = Ratio<BigInt>;

/// Shorthand for building a `Rational` from an integer pair.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Ratio::new(BigInt::from(numer), BigInt::from(denom))
}

/// Errors raised when constructing an [`IntDist`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistError {
    /// Two atoms share the same support value.
    #[error("duplicate support value {0}")]
    DuplicateValue(i64),
    /// Probabilities are not all positive or do not sum to exactly 1.
    #[error("probabilities must be positive and sum to exactly 1 (total mass {0})")]
    BadMass(Rational),
}

/// A finite integer-supported probability distribution.
///
/// Support values are stored strictly increasing; all probabilities are
/// strictly positive rationals summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntDist {
    values: Vec<i64>,
    probs: Vec<Rational>,
}

impl IntDist {
    /// Builds a distribution from `(value, probability)` atoms.
    ///
    /// Atoms may arrive in any order; they are sorted by value. Duplicate
    /// values are rejected, as is any mass vector that is not strictly
    /// positive and exactly normalized.
    pub fn new(atoms: Vec<(i64, Rational)>) -> Result<Self, DistError> {
        let mut atoms = atoms;
        atoms.sort_by_key(|&(x, _)| x);
        for pair in atoms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(DistError::DuplicateValue(pair[0].0));
            }
        }
        let total: Rational = atoms.iter().map(|(_, p)| p).sum();
        if atoms.iter().any(|(_, p)| !p.is_positive()) || !total.is_one() {
            return Err(DistError::BadMass(total));
        }
        let (values, probs) = atoms.into_iter().unzip();
        Ok(IntDist { values, probs })
    }

    /// Point mass at `x`.
    pub fn point(x: i64) -> Self {
        IntDist {
            values: vec![x],
            probs: vec![Rational::one()],
        }
    }

    /// Internal constructor for atoms already sorted, distinct, and normalized.
    pub(crate) fn from_sorted_unchecked(values: Vec<i64>, probs: Vec<Rational>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(probs.iter().sum::<Rational>().is_one());
        IntDist { values, probs }
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a distribution carries at least one atom.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Support values, strictly increasing.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Probabilities in support order.
    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// Iterates `(value, probability)` pairs in increasing value order.
    pub fn atoms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.values.iter().copied().zip(self.probs.iter())
    }

    /// `P(X = x)`, zero off the support.
    pub fn prob_at(&self, x: i64) -> Rational {
        match self.values.binary_search(&x) {
            Ok(i) => self.probs[i].clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Smallest support value.
    pub fn min_value(&self) -> i64 {
        self.values[0]
    }

    /// Largest support value.
    pub fn max_value(&self) -> i64 {
        *self.values.last().unwrap()
    }

    /// Atoms sorted by descending probability, ties broken by ascending value.
    ///
    /// This is the deterministic non-increasing view `p⁽¹⁾ ≥ … ≥ p⁽ᴺ⁾` used by
    /// the rearrangement operator and the proof-chain tracer.
    pub fn atoms_by_descending_prob(&self) -> Vec<(i64, Rational)> {
        let mut atoms: Vec<(i64, Rational)> =
            self.atoms().map(|(x, p)| (x, p.clone())).collect();
        atoms.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        atoms
    }

    /// Shifts every support value by `k`.
    pub fn translate(&self, k: i64) -> IntDist {
        IntDist {
            values: self.values.iter().map(|x| x + k).collect(),
            probs: self.probs.clone(),
        }
    }

    /// Negates every support value.
    pub fn reflect(&self) -> IntDist {
        let mut values: Vec<i64> = self.values.iter().map(|x| -x).collect();
        values.reverse();
        let mut probs = self.probs.clone();
        probs.reverse();
        IntDist { values, probs }
    }

    /// Exact mean `Σ x·p`.
    pub fn mean(&self) -> Rational {
        moments(self.atoms()).0
    }

    /// Exact variance `Σ x²·p − (Σ x·p)²`.
    pub fn variance(&self) -> Rational {
        let (m1, m2) = moments(self.atoms());
        m2 - m1.clone() * m1
    }

    /// The full closed interval of medians.
    pub fn median_set(&self) -> MedianInterval {
        let half = ratio(1, 2);
        let mut cum = Rational::zero();
        for (i, p) in self.probs.iter().enumerate() {
            cum += p;
            if cum == half {
                // Mass splits exactly: everything between this atom and the
                // next (inclusive) is a median.
                return MedianInterval {
                    lo: Rational::from(BigInt::from(self.values[i])),
                    hi: Rational::from(BigInt::from(self.values[i + 1])),
                };
            }
            if cum > half {
                let m = Rational::from(BigInt::from(self.values[i]));
                return MedianInterval {
                    lo: m.clone(),
                    hi: m,
                };
            }
        }
        unreachable!("total mass is 1")
    }

    /// Mean absolute deviation `E|X − m|` about any median `m` (the value is
    /// constant across the median interval).
    pub fn mad_median(&self) -> Rational {
        mad_about_median(&self.values, &self.probs)
    }

    /// Exact `E|X − a|` for an arbitrary rational center.
    pub fn mean_abs_deviation(&self, a: &Rational) -> Rational {
        self.atoms()
            .map(|(x, p)| (Rational::from(BigInt::from(x)) - a).abs() * p)
            .sum()
    }

    /// Gcd of all pairwise support differences; 0 for a singleton support.
    pub fn lattice_span(&self) -> u64 {
        self.values
            .iter()
            .skip(1)
            .map(|x| (x - self.values[0]).unsigned_abs())
            .fold(0u64, num_integer::gcd)
    }

    /// True iff some integer translate of `self` equals `other` or its reflection.
    pub fn equivalent_up_to_translation_reflection(&self, other: &IntDist) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Canonical representative of the translation/reflection class: shift the
    /// minimum support value to 0 and keep the lexicographically smaller of
    /// the shifted original and shifted reflection.
    fn canonical_form(&self) -> Vec<(i64, Rational)> {
        let shifted: Vec<(i64, Rational)> = self
            .translate(-self.min_value())
            .atoms()
            .map(|(x, p)| (x, p.clone()))
            .collect();
        let refl = self.reflect();
        let reflected: Vec<(i64, Rational)> = refl
            .translate(-refl.min_value())
            .atoms()
            .map(|(x, p)| (x, p.clone()))
            .collect();
        shifted.min(reflected)
    }
}

/// Closed interval `[lo, hi]` of median values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedianInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl MedianInterval {
    /// True iff `a` lies in the interval.
    pub fn contains(&self, a: &Rational) -> bool {
        &self.lo <= a && a <= &self.hi
    }
}

/// First and second moments `(Σ x·p, Σ x²·p)` in one pass.
pub(crate) fn moments<'a>(atoms: impl Iterator<Item = (i64, &'a Rational)>) -> (Rational, Rational) {
    let mut m1 = Rational::zero();
    let mut m2 = Rational::zero();
    for (x, p) in atoms {
        let xr = Rational::from(BigInt::from(x));
        m1 += &xr * p;
        m2 += &xr * &xr * p;
    }
    (m1, m2)
}

/// `E|X − m|` about a median, for parallel value/probability slices sorted by
/// value. Used by both `IntDist::mad_median` and the exhaustive oracle.
pub(crate) fn mad_about_median(values: &[i64], probs: &[Rational]) -> Rational {
    let half = ratio(1, 2);
    let mut cum = Rational::zero();
    let mut median = values[0];
    for (i, p) in probs.iter().enumerate() {
        cum += p;
        if cum >= half {
            median = values[i];
            break;
        }
    }
    values
        .iter()
        .zip(probs)
        .map(|(&x, p)| Rational::from(BigInt::from((x - median).abs())) * p)
        .sum()
}
