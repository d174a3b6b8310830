//! Dispersion functionals `D_f(X) = min_a E f(|X − a|)`, their minimizer
//! sets, the main inequality `D_f(X⁺) ≤ D_f(X)`, and the sorted-dot-product
//! chain that proves it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::dist::{IntDist, MedianInterval, Rational};
use crate::rearrange::plus_rearrangement;
use crate::scalar::{rational_to_f64, Scalar};

/// Stopping tolerance of the golden-section search on the center `a`.
pub const GOLDEN_SECTION_TOL: f64 = 1e-12;

/// Two float dispersion values within this distance count as equal.
pub const FLOAT_VALUE_EQ_TOL: f64 = 1e-9;

/// A non-decreasing cost `f: [0, ∞) → [0, ∞)` with `f(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum DispersionFunction {
    /// `f(x) = x`; dispersion is the mean absolute deviation about the median.
    Identity,
    /// `f(x) = x²`; dispersion is the variance.
    Square,
    /// `f(x) = x^p` for `p ≥ 1`, evaluated in floating point.
    Power(f64),
}

impl DispersionFunction {
    /// True iff this cost admits exact rational evaluation.
    pub fn exact_capable(&self) -> bool {
        matches!(self, DispersionFunction::Identity | DispersionFunction::Square)
    }

    /// True iff `f` has a positive derivative for `x > 0` and right
    /// derivative 0 at 0 — the hypothesis under which equality in the main
    /// inequality forces a translation/reflection of the plus form.
    pub fn strictness_eligible(&self) -> bool {
        match self {
            DispersionFunction::Identity => false,
            DispersionFunction::Square => true,
            DispersionFunction::Power(p) => *p > 1.0,
        }
    }

    /// `f(|x|)` in exact arithmetic. Callers must restrict to
    /// [`exact_capable`](Self::exact_capable) kinds.
    pub(crate) fn apply_exact(&self, x: &Rational) -> Rational {
        let ax = x.abs();
        match self {
            DispersionFunction::Identity => ax,
            DispersionFunction::Square => &ax * &ax,
            DispersionFunction::Power(_) => unreachable!("power cost has no exact path"),
        }
    }

    /// `f(|x|)` in floating point.
    pub(crate) fn apply_f64(&self, x: f64) -> f64 {
        let ax = x.abs();
        match self {
            DispersionFunction::Identity => ax,
            DispersionFunction::Square => ax * ax,
            DispersionFunction::Power(p) => ax.powf(*p),
        }
    }

    /// `f'(t)` for `t ≥ 0`, in floating point.
    fn derivative_f64(&self, t: f64) -> f64 {
        match self {
            DispersionFunction::Identity => 1.0,
            DispersionFunction::Square => 2.0 * t,
            DispersionFunction::Power(p) => p * t.powf(p - 1.0),
        }
    }
}

impl fmt::Display for DispersionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DispersionFunction::Identity => write!(f, "identity"),
            DispersionFunction::Square => write!(f, "square"),
            DispersionFunction::Power(p) => write!(f, "power:{p}"),
        }
    }
}

impl FromStr for DispersionFunction {
    type Err = String;

    /// Parses `identity`, `square`, or `power:<p>` with `p ≥ 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(DispersionFunction::Identity),
            "square" => Ok(DispersionFunction::Square),
            _ => {
                let p = s
                    .strip_prefix("power:")
                    .ok_or_else(|| format!("unknown dispersion function `{s}` (expected identity, square, or power:<p>)"))?
                    .parse::<f64>()
                    .map_err(|e| format!("bad power exponent: {e}"))?;
                if !p.is_finite() || p < 1.0 {
                    return Err(format!("power exponent must be a finite number ≥ 1, got {p}"));
                }
                Ok(DispersionFunction::Power(p))
            }
        }
    }
}

/// The minimizer set `M_f(X)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Minimizers {
    /// The full median interval (identity cost).
    Interval(MedianInterval),
    /// A single exact point (square cost: the mean).
    Point(Rational),
    /// A single point located numerically, within `tol` of a true minimizer.
    ApproxPoint { a: f64, tol: f64 },
}

impl Serialize for Minimizers {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Minimizers::Interval(m) => {
                let mut s = serializer.serialize_struct("Minimizers", 3)?;
                s.serialize_field("kind", "interval")?;
                s.serialize_field("lo", &m.lo.to_string())?;
                s.serialize_field("hi", &m.hi.to_string())?;
                s.end()
            }
            Minimizers::Point(a) => {
                let mut s = serializer.serialize_struct("Minimizers", 2)?;
                s.serialize_field("kind", "point")?;
                s.serialize_field("a", &a.to_string())?;
                s.end()
            }
            Minimizers::ApproxPoint { a, tol } => {
                let mut s = serializer.serialize_struct("Minimizers", 3)?;
                s.serialize_field("kind", "point_approx")?;
                s.serialize_field("a", a)?;
                s.serialize_field("tol", tol)?;
                s.end()
            }
        }
    }
}

/// Value and minimizer set of a dispersion functional.
#[derive(Clone, Debug, Serialize)]
pub struct DispersionResult {
    pub value: Scalar,
    pub minimizers: Minimizers,
    /// True iff `value` (and the minimizers) were computed in exact arithmetic.
    pub exact: bool,
}

/// Outcome of checking `D_f(X⁺) ≤ D_f(X)` on a concrete distribution.
#[derive(Clone, Debug, Serialize)]
pub struct MainInequalityReport {
    pub d_f_x: Scalar,
    pub d_f_x_plus: Scalar,
    /// `D_f(X⁺) ≤ D_f(X)`.
    pub holds: bool,
    /// The two values coincide (exactly, or within [`FLOAT_VALUE_EQ_TOL`]).
    pub equality: bool,
    /// `X` is a translate of `X⁺` or of `−X⁺`.
    pub equivalence_explains_equality: bool,
}

/// The three-step dot-product chain `p·v ≥ p·v′ ≥ p·w` traced on a concrete
/// distribution and center.
#[derive(Clone, Debug, Serialize)]
pub struct ProofChainTrace {
    pub a: Scalar,
    pub a_prime: Scalar,
    /// Probabilities sorted non-increasingly (ties by ascending value).
    #[serde(serialize_with = "crate::json::ser_rational_vec")]
    pub p_vec: Vec<Rational>,
    /// `f(|xᵢ − a|)` in the order matching `p_vec`.
    pub v_vec: Vec<Scalar>,
    /// `v_vec` sorted non-decreasingly.
    pub v_sorted_vec: Vec<Scalar>,
    /// Ideal cost vector `f(a′), f(1−a′), f(1+a′), f(2−a′), …`.
    pub w_vec: Vec<Scalar>,
    pub dot_pv: Scalar,
    pub dot_pv_sorted: Scalar,
    pub dot_pw: Scalar,
}

/// `E f(|X − a|)`; exact whenever the cost is identity/square and `a` is rational.
pub fn expected_f_deviation(d: &IntDist, f: &DispersionFunction, a: &Scalar) -> Scalar {
    match (f.exact_capable(), a) {
        (true, Scalar::Exact(a)) => Scalar::Exact(eval_exact(d, f, a)),
        _ => Scalar::Approx(eval_float(d, f, a.to_f64())),
    }
}

fn eval_exact(d: &IntDist, f: &DispersionFunction, a: &Rational) -> Rational {
    d.atoms()
        .map(|(x, p)| f.apply_exact(&(Rational::from(BigInt::from(x)) - a)) * p)
        .sum()
}

fn eval_float(d: &IntDist, f: &DispersionFunction, a: f64) -> f64 {
    d.atoms()
        .map(|(x, p)| rational_to_f64(p) * f.apply_f64(x as f64 - a))
        .sum()
}

/// Computes `D_f(X)` and `M_f(X)`.
///
/// Identity and square costs use the exact closed forms (MAD about the
/// median interval, variance at the mean). Power costs minimize the convex
/// objective by golden-section search over the support hull — for a
/// non-decreasing cost, no center outside the hull can beat one inside.
pub fn dispersion(d: &IntDist, f: &DispersionFunction) -> DispersionResult {
    match f {
        DispersionFunction::Identity => DispersionResult {
            value: Scalar::Exact(d.mad_median()),
            minimizers: Minimizers::Interval(d.median_set()),
            exact: true,
        },
        DispersionFunction::Square => DispersionResult {
            value: Scalar::Exact(d.variance()),
            minimizers: Minimizers::Point(d.mean()),
            exact: true,
        },
        DispersionFunction::Power(_) => {
            let lo = d.min_value() as f64;
            let hi = d.max_value() as f64;
            let g = |a: f64| eval_float(d, f, a);
            let a = if lo == hi {
                lo
            } else {
                let coarse = golden_section_min(&g, lo, hi);
                // Near the minimum the objective is flat in f64, so the
                // golden-section bracket is only good to ~sqrt(eps); polish
                // with a sign bisection of the monotone derivative.
                let dg = |a: f64| deriv_float(d, f, a);
                bisect_derivative(&dg, (coarse - 1e-3).max(lo), (coarse + 1e-3).min(hi))
            };
            DispersionResult {
                value: Scalar::Approx(g(a)),
                minimizers: Minimizers::ApproxPoint {
                    a,
                    tol: GOLDEN_SECTION_TOL,
                },
                exact: false,
            }
        }
    }
}

/// Derivative of `a ↦ E f(|X − a|)`.
fn deriv_float(d: &IntDist, f: &DispersionFunction, a: f64) -> f64 {
    d.atoms()
        .map(|(x, p)| {
            let t = x as f64 - a;
            -t.signum() * rational_to_f64(p) * f.derivative_f64(t.abs())
        })
        .sum()
}

/// Root of a non-decreasing derivative on `[lo, hi]`, clamped to an endpoint
/// when the sign never changes.
fn bisect_derivative(dg: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    if dg(lo) >= 0.0 {
        return lo;
    }
    if dg(hi) <= 0.0 {
        return hi;
    }
    while hi - lo > GOLDEN_SECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if dg(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_section_min(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INVPHI * (hi - lo);
    let mut d = lo + INVPHI * (hi - lo);
    let mut gc = g(c);
    let mut gd = g(d);
    while hi - lo > GOLDEN_SECTION_TOL {
        if gc <= gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - INVPHI * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + INVPHI * (hi - lo);
            gd = g(d);
        }
    }
    0.5 * (lo + hi)
}

/// Checks `D_f(X⁺) ≤ D_f(X)` and classifies equality.
pub fn check_main_inequality(d: &IntDist, f: &DispersionFunction) -> MainInequalityReport {
    let plus = plus_rearrangement(d);
    let equivalence = d.equivalent_up_to_translation_reflection(&plus);
    if f.exact_capable() {
        let dx = exact_dispersion_value(d, f);
        let dp = exact_dispersion_value(&plus, f);
        MainInequalityReport {
            holds: dp <= dx,
            equality: dp == dx,
            equivalence_explains_equality: equivalence,
            d_f_x: Scalar::Exact(dx),
            d_f_x_plus: Scalar::Exact(dp),
        }
    } else {
        let dx = dispersion(d, f).value.to_f64();
        let dp = dispersion(&plus, f).value.to_f64();
        let equality = (dp - dx).abs() <= FLOAT_VALUE_EQ_TOL;
        MainInequalityReport {
            holds: dp <= dx || equality,
            equality,
            equivalence_explains_equality: equivalence,
            d_f_x: Scalar::Approx(dx),
            d_f_x_plus: Scalar::Approx(dp),
        }
    }
}

fn exact_dispersion_value(d: &IntDist, f: &DispersionFunction) -> Rational {
    match f {
        DispersionFunction::Identity => d.mad_median(),
        DispersionFunction::Square => d.variance(),
        DispersionFunction::Power(_) => unreachable!("power cost has no exact path"),
    }
}

/// Distance from `a` to its nearest integer, in `[0, 1/2]`.
pub fn nearest_integer_distance(a: &Scalar) -> Scalar {
    match a {
        Scalar::Exact(a) => {
            let frac = a - a.floor();
            let other = Rational::one() - &frac;
            Scalar::Exact(frac.min(other))
        }
        Scalar::Approx(a) => {
            let frac = a - a.floor();
            Scalar::Approx(frac.min(1.0 - frac))
        }
    }
}

/// The non-decreasing ideal cost vector
/// `f(a′), f(1−a′), f(1+a′), f(2−a′), f(2+a′), …` truncated at length `n`.
///
/// These are the costs of the `n` integers closest to a point at distance
/// `a′` from the nearest integer.
pub fn w_vector(n: usize, a_prime: &Scalar, f: &DispersionFunction) -> Vec<Scalar> {
    match (f.exact_capable(), a_prime) {
        (true, Scalar::Exact(ap)) => (0..n)
            .map(|i| Scalar::Exact(f.apply_exact(&ideal_distance_exact(i, ap))))
            .collect(),
        _ => {
            let ap = a_prime.to_f64();
            (0..n)
                .map(|i| Scalar::Approx(f.apply_f64(ideal_distance_f64(i, ap))))
                .collect()
        }
    }
}

/// Distance of the `i`-th closest integer to a point at offset `a′`:
/// `a′, 1−a′, 1+a′, 2−a′, 2+a′, …`.
fn ideal_distance_exact(i: usize, a_prime: &Rational) -> Rational {
    if i == 0 {
        a_prime.clone()
    } else if i % 2 == 1 {
        Rational::from(BigInt::from(i.div_ceil(2) as i64)) - a_prime
    } else {
        Rational::from(BigInt::from((i / 2) as i64)) + a_prime
    }
}

fn ideal_distance_f64(i: usize, a_prime: f64) -> f64 {
    if i == 0 {
        a_prime
    } else if i % 2 == 1 {
        i.div_ceil(2) as f64 - a_prime
    } else {
        (i / 2) as f64 + a_prime
    }
}

/// Traces the dot-product chain `p·v ≥ p·v′ ≥ p·w` for a distribution, cost,
/// and center.
///
/// When `a` minimizes `E f(|X − a|)`, the head `p·v` equals `D_f(X)` and the
/// tail `p·w` equals `E f(|X⁺ − a′|) ≥ D_f(X⁺)`. The chain inequalities hold
/// for every center, and are asserted before returning.
pub fn proof_chain(d: &IntDist, f: &DispersionFunction, a: &Scalar) -> ProofChainTrace {
    let sorted = d.atoms_by_descending_prob();
    let p_vec: Vec<Rational> = sorted.iter().map(|(_, p)| p.clone()).collect();
    let n = sorted.len();
    let a_prime = nearest_integer_distance(a);
    let w_vec = w_vector(n, &a_prime, f);

    let exact_mode = f.exact_capable() && a.is_exact();
    if exact_mode {
        let ar = a.as_exact().unwrap();
        let v: Vec<Rational> = sorted
            .iter()
            .map(|(x, _)| f.apply_exact(&(Rational::from(BigInt::from(*x)) - ar)))
            .collect();
        let mut v_sorted = v.clone();
        v_sorted.sort();
        let dot = |vals: &[Rational]| -> Rational {
            p_vec.iter().zip(vals).map(|(p, v)| p * v).sum()
        };
        let w: Vec<Rational> = w_vec
            .iter()
            .map(|s| s.as_exact().unwrap().clone())
            .collect();
        let dot_pv = dot(&v);
        let dot_pv_sorted = dot(&v_sorted);
        let dot_pw = dot(&w);
        assert!(
            dot_pv >= dot_pv_sorted && dot_pv_sorted >= dot_pw,
            "dot-product chain must be non-increasing"
        );
        ProofChainTrace {
            a: a.clone(),
            a_prime,
            p_vec,
            v_vec: v.into_iter().map(Scalar::Exact).collect(),
            v_sorted_vec: v_sorted.into_iter().map(Scalar::Exact).collect(),
            w_vec,
            dot_pv: Scalar::Exact(dot_pv),
            dot_pv_sorted: Scalar::Exact(dot_pv_sorted),
            dot_pw: Scalar::Exact(dot_pw),
        }
    } else {
        let af = a.to_f64();
        let pf: Vec<f64> = p_vec.iter().map(rational_to_f64).collect();
        let v: Vec<f64> = sorted
            .iter()
            .map(|(x, _)| f.apply_f64(*x as f64 - af))
            .collect();
        let mut v_sorted = v.clone();
        v_sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let w: Vec<f64> = w_vec.iter().map(Scalar::to_f64).collect();
        let dot = |vals: &[f64]| -> f64 { pf.iter().zip(vals).map(|(p, v)| p * v).sum() };
        let dot_pv = dot(&v);
        let dot_pv_sorted = dot(&v_sorted);
        let dot_pw = dot(&w);
        assert!(
            dot_pv >= dot_pv_sorted - FLOAT_VALUE_EQ_TOL
                && dot_pv_sorted >= dot_pw - FLOAT_VALUE_EQ_TOL,
            "dot-product chain must be non-increasing"
        );
        ProofChainTrace {
            a: a.clone(),
            a_prime,
            p_vec,
            v_vec: v.into_iter().map(Scalar::Approx).collect(),
            v_sorted_vec: v_sorted.into_iter().map(Scalar::Approx).collect(),
            w_vec,
            dot_pv: Scalar::Approx(dot_pv),
            dot_pv_sorted: Scalar::Approx(dot_pv_sorted),
            dot_pw: Scalar::Approx(dot_pw),
        }
    }
}
