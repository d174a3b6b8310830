//! Exhaustive ground truth: enumerate every placement of a probability
//! multiset onto an integer window and certify that the plus form attains
//! the global dispersion minimum.
//!
//! Enumeration walks value combinations in lexicographic order and, inside
//! each combination, the distinct permutations of the probability multiset,
//! so equal probabilities never produce duplicate distributions.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::dispersion::DispersionFunction;
use crate::dist::{self, IntDist, Rational};
use crate::json::ser_rational;
use crate::rearrange::plus_form_of_multiset;

/// Default cap on `C(|window|, N) · N!`, the raw assignment count.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Errors raised by the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// The raw assignment count exceeds the budget.
    #[error("enumeration of {assignments} assignments exceeds budget {budget}")]
    TooLarge { assignments: u128, budget: u64 },
    /// The probability multiset is not strictly positive with total mass 1.
    #[error("probability multiset must be positive and sum to exactly 1 (total mass {0})")]
    BadMultiset(Rational),
    /// The window holds fewer values than the multiset has entries.
    #[error("window holds {window_len} values but the multiset has {atoms} entries")]
    WindowTooSmall { window_len: u64, atoms: usize },
    /// The requested cost has no exact evaluation path.
    #[error("oracle requires an exact cost (identity or square), got `{0}`")]
    InexactFunction(String),
}

/// Exhaustive-search verdict for one probability multiset on one window.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    /// Distinct distributions enumerated (duplicates from equal
    /// probabilities collapsed).
    pub num_assignments: u64,
    /// Global minimum of the dispersion value over the enumeration.
    #[serde(serialize_with = "ser_rational")]
    pub min_value: Rational,
    /// Every enumerated distribution attaining `min_value`.
    pub minimizers: Vec<IntDist>,
    /// Dispersion value of the plus form of the multiset.
    #[serde(serialize_with = "ser_rational")]
    pub plus_form_value: Rational,
    /// The plus form attains the global minimum.
    pub theorem_holds: bool,
    /// Every minimizer is a translate/reflection of the plus form.
    pub equality_cases_all_equivalent: bool,
}

#[derive(Debug)]
struct Setup {
    window_values: Vec<i64>,
    /// Probabilities sorted ascending (start state for permutation walks).
    probs_sorted: Vec<Rational>,
}

fn validate(
    probs: &[Rational],
    window: &RangeInclusive<i64>,
    budget: u64,
) -> Result<Setup, OracleError> {
    let total: Rational = probs.iter().sum();
    if probs.is_empty() || probs.iter().any(|p| !p.is_positive()) || !total.is_one() {
        return Err(OracleError::BadMultiset(total));
    }
    let n = probs.len();
    let window_len = if window.start() <= window.end() {
        (window.end() - window.start() + 1) as u64
    } else {
        0
    };
    if window_len < n as u64 {
        return Err(OracleError::WindowTooSmall {
            window_len,
            atoms: n,
        });
    }
    let assignments = raw_assignment_count(window_len, n);
    if assignments > budget as u128 {
        return Err(OracleError::TooLarge {
            assignments,
            budget,
        });
    }
    let mut probs_sorted = probs.to_vec();
    probs_sorted.sort();
    Ok(Setup {
        window_values: (*window.start()..=*window.end()).collect(),
        probs_sorted,
    })
}

/// `C(window_len, n) · n!`, saturating far above any usable budget.
fn raw_assignment_count(window_len: u64, n: usize) -> u128 {
    let mut count: u128 = 1;
    for i in 0..n as u64 {
        count = count.saturating_mul((window_len - i) as u128);
    }
    count
}

/// Streams every distinct distribution obtained by placing the probability
/// multiset on `n` distinct values of the window.
pub fn enumerate_assignments(
    probs: &[Rational],
    window: RangeInclusive<i64>,
    budget: u64,
) -> Result<Assignments, OracleError> {
    let setup = validate(probs, &window, budget)?;
    let n = setup.probs_sorted.len();
    Ok(Assignments {
        comb: (0..n).collect(),
        perm: setup.probs_sorted.clone(),
        setup,
        done: false,
    })
}

/// Iterator over the enumerated assignments, in lexicographic order of
/// (value combination, probability permutation).
#[derive(Debug)]
pub struct Assignments {
    setup: Setup,
    comb: Vec<usize>,
    perm: Vec<Rational>,
    done: bool,
}

impl Iterator for Assignments {
    type Item = IntDist;

    fn next(&mut self) -> Option<IntDist> {
        if self.done {
            return None;
        }
        let values: Vec<i64> = self
            .comb
            .iter()
            .map(|&i| self.setup.window_values[i])
            .collect();
        let out = IntDist::from_sorted_unchecked(values, self.perm.clone());
        if !next_permutation(&mut self.perm) {
            self.perm = self.setup.probs_sorted.clone();
            if !next_combination(&mut self.comb, self.setup.window_values.len()) {
                self.done = true;
            }
        }
        Some(out)
    }
}

/// Advances `idx` (strictly increasing indices into `0..m`) to the next
/// combination in lexicographic order.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let n = idx.len();
    let mut i = n;
    while i > 0 {
        i -= 1;
        if idx[i] < m - n + i {
            idx[i] += 1;
            for j in i + 1..n {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advances a slice to its next lexicographic permutation; each distinct
/// permutation of a multiset appears exactly once when starting sorted.
fn next_permutation<T: Ord>(arr: &mut [T]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// Exhaustively verifies that the plus form minimizes `D_f` over every
/// placement of the multiset in the window, and that (for strictness-eligible
/// costs) every other minimizer is a translate/reflection of it.
///
/// Only exact costs (identity, square) are accepted; every dispersion value
/// is computed in exact arithmetic.
pub fn verify_theorem(
    probs: &[Rational],
    window: RangeInclusive<i64>,
    f: &DispersionFunction,
    budget: u64,
) -> Result<OracleReport, OracleError> {
    if !f.exact_capable() {
        return Err(OracleError::InexactFunction(f.to_string()));
    }
    let setup = validate(probs, &window, budget)?;
    let plus = plus_form_of_multiset(probs);
    let plus_form_value = match f {
        DispersionFunction::Identity => plus.mad_median(),
        DispersionFunction::Square => plus.variance(),
        DispersionFunction::Power(_) => unreachable!(),
    };

    let scan = match FastScale::try_new(&setup) {
        Some(scale) => scan_integer(&setup, f, &scale),
        None => scan_rational(&setup, f),
    };

    let theorem_holds = plus_form_value == scan.min_value;
    let equality_cases_all_equivalent = scan
        .minimizers
        .iter()
        .all(|m| m.equivalent_up_to_translation_reflection(&plus));
    Ok(OracleReport {
        num_assignments: scan.count,
        min_value: scan.min_value,
        minimizers: scan.minimizers,
        plus_form_value,
        theorem_holds,
        equality_cases_all_equivalent,
    })
}

struct ScanResult {
    count: u64,
    min_value: Rational,
    minimizers: Vec<IntDist>,
}

/// Common-denominator scaling that keeps the whole scan in `i128`.
///
/// With weights `wᵢ = pᵢ·W` the scaled objectives
/// `W·Σwx² − (Σwx)²  (= W²·Var)` and `Σw·|x−m|  (= W·MAD)` are integers, and
/// comparing them across assignments avoids every gcd reduction a rational
/// scan would pay.
struct FastScale {
    weights_sorted: Vec<u64>,
    w_total: u64,
}

impl FastScale {
    fn try_new(setup: &Setup) -> Option<FastScale> {
        let denom_lcm = setup
            .probs_sorted
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let w_total = denom_lcm.to_u64()?;
        let max_abs = setup
            .window_values
            .iter()
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0);
        // W²·x² must stay far below i128::MAX.
        if w_total > 1 << 40 || max_abs > 1 << 20 {
            return None;
        }
        let weights_sorted = setup
            .probs_sorted
            .iter()
            .map(|p| (p * Ratio::from_integer(denom_lcm.clone())).to_integer().to_u64())
            .collect::<Option<Vec<u64>>>()?;
        Some(FastScale {
            weights_sorted,
            w_total,
        })
    }
}

fn scan_integer(setup: &Setup, f: &DispersionFunction, scale: &FastScale) -> ScanResult {
    let n = scale.weights_sorted.len();
    let m = setup.window_values.len();
    let w_total = scale.w_total as i128;
    let mut values = vec![0i64; n];
    let mut comb: Vec<usize> = (0..n).collect();
    let mut count: u64 = 0;
    let mut best: Option<i128> = None;
    let mut minimizers: Vec<(Vec<i64>, Vec<u64>)> = Vec::new();
    loop {
        for (slot, &i) in values.iter_mut().zip(comb.iter()) {
            *slot = setup.window_values[i];
        }
        let mut perm = scale.weights_sorted.clone();
        loop {
            let val = match f {
                DispersionFunction::Identity => scaled_mad(&values, &perm, w_total),
                DispersionFunction::Square => scaled_variance(&values, &perm, w_total),
                DispersionFunction::Power(_) => unreachable!(),
            };
            count += 1;
            if best.is_none_or(|b| val < b) {
                best = Some(val);
                minimizers.clear();
            }
            if best == Some(val) {
                minimizers.push((values.clone(), perm.clone()));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if !next_combination(&mut comb, m) {
            break;
        }
    }
    let denom = match f {
        DispersionFunction::Identity => BigInt::from(scale.w_total),
        _ => BigInt::from(scale.w_total) * BigInt::from(scale.w_total),
    };
    ScanResult {
        count,
        min_value: Ratio::new(BigInt::from(best.expect("at least one assignment")), denom),
        minimizers: minimizers
            .into_iter()
            .map(|(values, weights)| {
                let probs = weights
                    .into_iter()
                    .map(|w| Ratio::new(BigInt::from(w), BigInt::from(scale.w_total)))
                    .collect();
                IntDist::from_sorted_unchecked(values, probs)
            })
            .collect(),
    }
}

/// `W²·Var` for integer weights.
fn scaled_variance(values: &[i64], weights: &[u64], w_total: i128) -> i128 {
    let mut s1: i128 = 0;
    let mut s2: i128 = 0;
    for (&x, &w) in values.iter().zip(weights) {
        let x = x as i128;
        let wx = w as i128 * x;
        s1 += wx;
        s2 += wx * x;
    }
    w_total * s2 - s1 * s1
}

/// `W·MAD` about the median, for integer weights.
fn scaled_mad(values: &[i64], weights: &[u64], w_total: i128) -> i128 {
    let mut cum: i128 = 0;
    let mut median = values[0];
    for (&x, &w) in values.iter().zip(weights) {
        cum += w as i128;
        if 2 * cum >= w_total {
            median = x;
            break;
        }
    }
    values
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w as i128 * (x - median).unsigned_abs() as i128)
        .sum()
}

/// Arbitrary-precision fallback for multisets whose common denominator or
/// window exceeds the integer fast path.
fn scan_rational(setup: &Setup, f: &DispersionFunction) -> ScanResult {
    let n = setup.probs_sorted.len();
    let m = setup.window_values.len();
    let mut comb: Vec<usize> = (0..n).collect();
    let mut count: u64 = 0;
    let mut best: Option<Rational> = None;
    let mut minimizers: Vec<IntDist> = Vec::new();
    loop {
        let values: Vec<i64> = comb.iter().map(|&i| setup.window_values[i]).collect();
        let mut perm = setup.probs_sorted.clone();
        loop {
            let val = match f {
                DispersionFunction::Identity => dist::mad_about_median(&values, &perm),
                DispersionFunction::Square => {
                    let (m1, m2) = dist::moments(values.iter().copied().zip(perm.iter()));
                    m2 - m1.clone() * m1
                }
                DispersionFunction::Power(_) => unreachable!(),
            };
            count += 1;
            match &best {
                Some(b) if &val > b => {}
                Some(b) if &val == b => {
                    minimizers.push(IntDist::from_sorted_unchecked(values.clone(), perm.clone()));
                }
                _ => {
                    best = Some(val);
                    minimizers.clear();
                    minimizers.push(IntDist::from_sorted_unchecked(values.clone(), perm.clone()));
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if !next_combination(&mut comb, m) {
            break;
        }
    }
    ScanResult {
        count,
        min_value: best.expect("at least one assignment"),
        minimizers,
    }
}
