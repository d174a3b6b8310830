//! Sums of independent integer variables: exact convolution, concentration
//! functions `Q(X) = max_x P(X = x)`, exhaustive sign-pattern comparisons
//! against rearranged summands, and local-limit-theorem ratio scans.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::dist::{IntDist, Rational};
use crate::json::ser_rational;
use crate::rearrange::plus_rearrangement;
use crate::scalar::{rational_to_f64, Scalar};

/// Default cap on the number of sign patterns searched (`2^n`).
pub const DEFAULT_SIGN_BUDGET: u64 = 1 << 20;

/// Default cap on the predicted denominator bit-size of an exact
/// self-convolution.
pub const DEFAULT_EXACT_BIT_BUDGET: u64 = 1 << 16;

/// Errors raised by the sum tools.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SumsError {
    /// Exact self-convolution would exceed the rational size budget.
    #[error("exact convolution denominators would need ~{predicted_bits} bits, over budget {budget}")]
    ExactTooLarge { predicted_bits: u64, budget: u64 },
    /// The lattice local limit theorem does not apply to this distribution.
    #[error("local limit theorem precondition fails: lattice span {span} (need 1) or zero variance")]
    DegenerateLattice { span: u64 },
    /// The sign search would exceed the pattern budget.
    #[error("sign search over {patterns} patterns exceeds budget {budget}")]
    TooManyPatterns { patterns: u128, budget: u64 },
    /// An operation needs at least one distribution.
    #[error("need at least one distribution")]
    EmptyInput,
}

/// Exact distribution of the sum of two independent variables.
pub fn convolve(a: &IntDist, b: &IntDist) -> IntDist {
    let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
    for (x, p) in a.atoms() {
        for (y, q) in b.atoms() {
            let term = p * q;
            acc.entry(x + y)
                .and_modify(|t| *t += &term)
                .or_insert(term);
        }
    }
    let (values, probs) = acc.into_iter().unzip();
    IntDist::from_sorted_unchecked(values, probs)
}

/// Selects exact rational or dense floating-point self-convolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvMode {
    Exact,
    Float,
}

/// A PMF in either exact or floating-point representation.
#[derive(Clone, Debug)]
pub enum Pmf {
    Exact(IntDist),
    Float(FloatPmf),
}

/// Distribution of the sum of `n` i.i.d. copies, by binary exponentiation.
pub fn self_convolve(
    d: &IntDist,
    n: u64,
    mode: ConvMode,
    bit_budget: u64,
) -> Result<Pmf, SumsError> {
    match mode {
        ConvMode::Exact => Ok(Pmf::Exact(self_convolve_exact(d, n, bit_budget)?)),
        ConvMode::Float => Ok(Pmf::Float(self_convolve_float(d, n))),
    }
}

/// Exact `n`-fold self-convolution.
///
/// Refused when the predicted denominator size (`n` times the bits of the
/// common denominator of `d`) exceeds `bit_budget`; rational denominators
/// grow multiplicatively with `n`.
pub fn self_convolve_exact(d: &IntDist, n: u64, bit_budget: u64) -> Result<IntDist, SumsError> {
    assert!(n >= 1, "need at least one copy");
    let denom_lcm = d
        .probs()
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let predicted_bits = n.saturating_mul(denom_lcm.bits().saturating_sub(1));
    if predicted_bits > bit_budget {
        return Err(SumsError::ExactTooLarge {
            predicted_bits,
            budget: bit_budget,
        });
    }
    let mut result = IntDist::point(0);
    let mut base = d.clone();
    let mut exp = n;
    loop {
        if exp & 1 == 1 {
            result = convolve(&result, &base);
        }
        exp >>= 1;
        if exp == 0 {
            return Ok(result);
        }
        base = convolve(&base, &base);
    }
}

/// Floating-point `n`-fold self-convolution over a dense contiguous window.
pub fn self_convolve_float(d: &IntDist, n: u64) -> FloatPmf {
    assert!(n >= 1, "need at least one copy");
    let mut result = FloatPmf::delta(0);
    let mut base = FloatPmf::from_dist(d);
    let mut exp = n;
    loop {
        if exp & 1 == 1 {
            result = result.convolve(&base);
        }
        exp >>= 1;
        if exp == 0 {
            return result;
        }
        base = base.convolve(&base);
    }
}

/// Dense floating-point PMF over a contiguous integer window. Zeros inside
/// the hull are kept.
#[derive(Clone, Debug)]
pub struct FloatPmf {
    offset: i64,
    probs: Vec<f64>,
}

impl FloatPmf {
    /// Point mass at `x`.
    pub fn delta(x: i64) -> Self {
        FloatPmf {
            offset: x,
            probs: vec![1.0],
        }
    }

    /// Dense conversion of an exact distribution.
    pub fn from_dist(d: &IntDist) -> Self {
        let offset = d.min_value();
        let len = (d.max_value() - offset + 1) as usize;
        let mut probs = vec![0.0; len];
        for (x, p) in d.atoms() {
            probs[(x - offset) as usize] = rational_to_f64(p);
        }
        FloatPmf { offset, probs }
    }

    /// Smallest value of the window.
    pub fn min_value(&self) -> i64 {
        self.offset
    }

    /// `P(X = x)`, zero outside the window.
    pub fn prob_at(&self, x: i64) -> f64 {
        usize::try_from(x - self.offset)
            .ok()
            .and_then(|i| self.probs.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    /// The window probabilities, in value order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Total mass; drifts from 1 only by floating-point rounding.
    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Sum distribution with an independent other PMF.
    pub fn convolve(&self, other: &FloatPmf) -> FloatPmf {
        let mut out = vec![0.0; self.probs.len() + other.probs.len() - 1];
        for (i, &p) in self.probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            for (j, &q) in other.probs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        FloatPmf {
            offset: self.offset + other.offset,
            probs: out,
        }
    }

    /// `(argmax_x, max probability)`, smallest `x` on ties.
    pub fn argmax(&self) -> (i64, f64) {
        let mut best_i = 0;
        let mut best = self.probs[0];
        for (i, &p) in self.probs.iter().enumerate().skip(1) {
            if p > best {
                best = p;
                best_i = i;
            }
        }
        (self.offset + best_i as i64, best)
    }
}

/// Whether a report was computed exactly or in floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PmfMode {
    Exact,
    Float,
}

/// Maximal point mass of a PMF and where it is attained.
#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    /// Smallest value attaining the maximum.
    pub argmax_x: i64,
    pub q_max: Scalar,
    pub mode: PmfMode,
}

/// Concentration function of an exact distribution.
pub fn concentration(d: &IntDist) -> ConcentrationReport {
    let (x, q) = exact_argmax(d);
    ConcentrationReport {
        argmax_x: x,
        q_max: Scalar::Exact(q),
        mode: PmfMode::Exact,
    }
}

/// Concentration function of a floating-point PMF.
pub fn concentration_float(p: &FloatPmf) -> ConcentrationReport {
    let (x, q) = p.argmax();
    ConcentrationReport {
        argmax_x: x,
        q_max: Scalar::Approx(q),
        mode: PmfMode::Float,
    }
}

fn exact_argmax(d: &IntDist) -> (i64, Rational) {
    let mut best: Option<(i64, &Rational)> = None;
    for (x, p) in d.atoms() {
        match best {
            Some((_, q)) if p <= q => {}
            _ => best = Some((x, p)),
        }
    }
    let (x, q) = best.expect("distribution has at least one atom");
    (x, q.clone())
}

/// Sign-search policy for [`compare_concentration`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignMode {
    /// Exhaust all `2^n` sign patterns.
    Search,
    /// Evaluate only the all-`+1` pattern.
    AllPlus,
}

/// Comparison of `Q(ΣXᵢ)` against the best `Q(Σ aᵢXᵢ⁺)` over sign patterns.
///
/// `inequality_holds` is a report, not an assertion: the rearranged side is
/// expected to dominate in broad regimes, and this tool exists to tabulate
/// exactly when it does.
#[derive(Clone, Debug, Serialize)]
pub struct SignSearchReport {
    /// `Q(X₁ + … + Xₙ)`, exact.
    #[serde(serialize_with = "ser_rational")]
    pub lhs_q: Rational,
    /// Lexicographically smallest sign pattern attaining `rhs_q_best`.
    pub best_signs: Vec<i8>,
    /// Largest `Q(a₁X₁⁺ + … + aₙXₙ⁺)` over the searched patterns, exact.
    #[serde(serialize_with = "ser_rational")]
    pub rhs_q_best: Rational,
    /// `lhs_q ≤ rhs_q_best`.
    pub inequality_holds: bool,
}

/// Computes `Q(ΣXᵢ)` exactly and searches sign patterns `aᵢ ∈ {−1, +1}` for
/// the maximal concentration of `Σ aᵢXᵢ⁺`.
pub fn compare_concentration(
    ds: &[IntDist],
    mode: SignMode,
    budget: u64,
) -> Result<SignSearchReport, SumsError> {
    if ds.is_empty() {
        return Err(SumsError::EmptyInput);
    }
    let n = ds.len();
    let lhs = ds[1..]
        .iter()
        .fold(ds[0].clone(), |acc, d| convolve(&acc, d));
    let lhs_q = exact_argmax(&lhs).1;

    let plus: Vec<IntDist> = ds.iter().map(plus_rearrangement).collect();
    let (best_signs, rhs_q_best) = match mode {
        SignMode::AllPlus => {
            let sum = plus[1..]
                .iter()
                .fold(plus[0].clone(), |acc, d| convolve(&acc, d));
            (vec![1i8; n], exact_argmax(&sum).1)
        }
        SignMode::Search => {
            let patterns = 1u128 << n.min(127);
            if n >= 64 || patterns > budget as u128 {
                return Err(SumsError::TooManyPatterns { patterns, budget });
            }
            let minus: Vec<IntDist> = plus.iter().map(IntDist::reflect).collect();
            let mut best: Option<(Rational, Vec<i8>)> = None;
            let mut signs: Vec<i8> = Vec::with_capacity(n);
            // Depth-first over sign prefixes (−1 branch first ⇒ patterns in
            // lexicographic order), sharing the partial convolutions.
            search_signs(
                &IntDist::point(0),
                &plus,
                &minus,
                &mut signs,
                &mut best,
            );
            let (q, signs) = best.expect("at least one pattern");
            (signs, q)
        }
    };
    Ok(SignSearchReport {
        inequality_holds: lhs_q <= rhs_q_best,
        lhs_q,
        best_signs,
        rhs_q_best,
    })
}

fn search_signs(
    partial: &IntDist,
    plus: &[IntDist],
    minus: &[IntDist],
    signs: &mut Vec<i8>,
    best: &mut Option<(Rational, Vec<i8>)>,
) {
    let depth = signs.len();
    if depth == plus.len() {
        let q = exact_argmax(partial).1;
        if best.as_ref().is_none_or(|(b, _)| &q > b) {
            *best = Some((q, signs.clone()));
        }
        return;
    }
    for (sign, term) in [(-1i8, &minus[depth]), (1i8, &plus[depth])] {
        signs.push(sign);
        search_signs(&convolve(partial, term), plus, minus, signs, best);
        signs.pop();
    }
}

/// One row of a local-limit-theorem scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LltScanRow {
    pub n: u64,
    /// `Q(X₁ + … + Xₙ)` in float mode.
    pub q_n: f64,
    /// `q_n · sqrt(2π · n · Var X)`; tends to 1 as `n` grows when the
    /// support differences generate all of `ℤ`.
    pub ratio: f64,
}

fn require_unit_lattice(d: &IntDist) -> Result<(), SumsError> {
    let span = d.lattice_span();
    if span != 1 || d.variance() == Rational::from(BigInt::from(0)) {
        return Err(SumsError::DegenerateLattice { span });
    }
    Ok(())
}

/// Concentration of the `n`-fold sum scaled by the limiting factor
/// `sqrt(2π n Var X)`.
pub fn llt_ratio(d: &IntDist, n: u64) -> Result<LltScanRow, SumsError> {
    require_unit_lattice(d)?;
    let (_, q_n) = self_convolve_float(d, n).argmax();
    let variance = rational_to_f64(&d.variance());
    let ratio = q_n * (2.0 * std::f64::consts::PI * n as f64 * variance).sqrt();
    Ok(LltScanRow { n, q_n, ratio })
}

/// [`llt_ratio`] for each `n` in order.
pub fn llt_scan(d: &IntDist, ns: &[u64]) -> Result<Vec<LltScanRow>, SumsError> {
    require_unit_lattice(d)?;
    ns.iter().map(|&n| llt_ratio(d, n)).collect()
}
