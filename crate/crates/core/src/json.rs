//! The shared JSON wire format for distributions.
//!
//! A distribution is `{"atoms": [{"x": <integer>, "p": "<fraction>"}, ...]}`.
//! Probabilities travel as exact fraction strings ("1/2", "3"); floating
//! point probabilities are rejected outright, both as JSON numbers and as
//! decimal strings.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::dist::{DistError, IntDist, Rational};

/// Errors raised while reading the distribution format.
#[derive(Debug, Error)]
pub enum JsonError {
    /// The input is not syntactically valid for the schema (including any
    /// attempt to pass a probability as a JSON number).
    #[error("invalid distribution JSON: {0}")]
    Syntax(String),
    /// A probability string is not an exact fraction.
    #[error("invalid fraction `{0}`: expected `<integer>` or `<integer>/<integer>` with nonzero denominator")]
    BadFraction(String),
    /// The atoms violate a distribution invariant.
    #[error(transparent)]
    Dist(#[from] DistError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomJson {
    x: i64,
    p: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistJson {
    atoms: Vec<AtomJson>,
}

/// Parses an exact fraction string: `-3`, `1/2`, `7/3`.
///
/// Decimal points and exponents are rejected; exactness is the contract.
pub fn parse_fraction(s: &str) -> Result<Rational, JsonError> {
    let bad = || JsonError::BadFraction(s.to_string());
    if s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Ratio::from_integer(n))
        }
        Some((numer, denom)) => {
            let n: BigInt = numer.parse().map_err(|_| bad())?;
            let d: BigInt = denom.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
    }
}

/// Parses a distribution from its JSON representation.
pub fn parse_dist(input: &str) -> Result<IntDist, JsonError> {
    let raw: DistJson =
        serde_json::from_str(input).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let atoms = raw
        .atoms
        .into_iter()
        .map(|a| Ok((a.x, parse_fraction(&a.p)?)))
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(IntDist::new(atoms)?)
}

/// Renders a distribution as compact JSON (atoms ascending, reduced fractions).
pub fn dist_to_string(d: &IntDist) -> String {
    serde_json::to_string(d).expect("distribution serialization cannot fail")
}

impl Serialize for IntDist {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Atom<'a>(i64, &'a Rational);
        impl Serialize for Atom<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("x", &self.0)?;
                m.serialize_entry("p", &self.1.to_string())?;
                m.end()
            }
        }
        struct Atoms<'a>(&'a IntDist);
        impl Serialize for Atoms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (x, p) in self.0.atoms() {
                    seq.serialize_element(&Atom(x, p))?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("IntDist", 1)?;
        s.serialize_field("atoms", &Atoms(self))?;
        s.end()
    }
}

/// Serializes a rational as its fraction string.
pub fn ser_rational<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&r.to_string())
}

/// Serializes a vector of rationals as fraction strings.
pub fn ser_rational_vec<S: Serializer>(
    v: &[Rational],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}
