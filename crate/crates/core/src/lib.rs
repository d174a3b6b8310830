//! Exact tools for probability distributions on the integers.
//!
//! The central object is [`IntDist`], a finite integer-supported distribution
//! with arbitrary-precision rational probabilities. Around it the crate
//! provides:
//!
//! - [`rearrange`]: the rearrangement `X ↦ X⁺` that sorts the probability
//!   multiset non-increasingly and places it on `0, 1, -1, 2, -2, …`;
//! - [`dispersion`]: dispersion functionals `D_f(X) = min_a E f(|X - a|)`
//!   with their minimizer sets, an inequality checker for
//!   `D_f(X⁺) ≤ D_f(X)`, and a step-by-step trace of the sorted-dot-product
//!   argument behind it;
//! - [`oracle`]: exhaustive enumeration of every placement of a probability
//!   multiset on an integer window, certifying that the plus form attains
//!   the global minimum;
//! - [`sums`]: exact convolution, concentration functions `Q(X) = max_x P(X=x)`,
//!   sign-pattern searches over sums of rearranged variables, and
//!   local-limit-theorem ratio scans;
//! - [`json`]: the shared JSON wire format (fraction strings, never floats);
//! - [`gen`]: seeded random instance generators for sweeps and test suites.
//!
//! Everything computable in rational arithmetic is computed exactly; floats
//! appear only where a power cost `x^p` or a large-`n` convolution forces
//! them, and every such value is labelled as approximate.

pub mod dispersion;
pub mod dist;
pub mod gen;
pub mod json;
pub mod oracle;
pub mod rearrange;
pub mod scalar;
pub mod sums;

pub use dispersion::{
    check_main_inequality, dispersion, expected_f_deviation, nearest_integer_distance,
    proof_chain, w_vector, DispersionFunction, DispersionResult, MainInequalityReport,
    Minimizers, ProofChainTrace,
};
pub use dist::{DistError, IntDist, MedianInterval, Rational};
pub use oracle::{enumerate_assignments, verify_theorem, OracleError, OracleReport};
pub use rearrange::{is_plus_form, plus_form_of_multiset, plus_rearrangement};
pub use scalar::Scalar;
pub use sums::{
    compare_concentration, concentration, concentration_float, convolve, llt_ratio, llt_scan,
    self_convolve, ConcentrationReport, ConvMode, FloatPmf, LltScanRow, Pmf, SignMode,
    SignSearchReport, SumsError,
};
