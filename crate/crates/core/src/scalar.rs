//! A number that is either an exact rational or a float approximation.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dist::Rational;

/// Exact-or-approximate scalar.
///
/// Exact values serialize as fraction strings ("9/4"), approximate values as
/// JSON numbers, so the two are never confused on the wire.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Approx(x) => *x,
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Approx(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => serializer.serialize_str(&r.to_string()),
            Scalar::Approx(x) => serializer.serialize_f64(*x),
        }
    }
}

/// Converts a rational to `f64`, staying accurate even when numerator or
/// denominator exceed the `f64` exponent range (plain `to_f64` would return
/// `inf/inf = NaN` there).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::{Signed, ToPrimitive};
    let numer_bits = r.numer().bits();
    let denom_bits = r.denom().bits();
    let max_bits = numer_bits.max(denom_bits);
    if max_bits <= 1000 {
        return r.to_f64().unwrap_or(f64::NAN);
    }
    // Shift both parts by the same amount; the quotient is preserved up to
    // the truncation of the low bits (~2^-60 relative).
    let shift = max_bits - 60;
    let n = (r.numer().abs() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    let sign = if r.numer().is_negative() { -1.0 } else { 1.0 };
    sign * n / d
}
