//! Error-to-exit-status mapping with stable machine-readable codes.
//!
//! Exit status 1 covers validation errors (bad input, bad flags, failed
//! preconditions); exit status 2 covers budget refusals. The stderr line is
//! a single JSON object `{"code": ..., "message": ...}` safe to parse from
//! shell scripts.

use xplus_core::json::JsonError;
use xplus_core::oracle::OracleError;
use xplus_core::sums::SumsError;
use xplus_core::DistError;

/// Exit status for validation errors.
pub const EXIT_VALIDATION: u8 = 1;
/// Exit status for budget refusals.
pub const EXIT_BUDGET: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub exit_class: u8,
    pub message: String,
}

impl CliError {
    fn new(code: &'static str, exit_class: u8, message: String) -> Self {
        CliError {
            code,
            exit_class,
            message,
        }
    }

    pub fn bad_argument(message: impl Into<String>) -> Self {
        Self::new("BAD_ARGUMENT", EXIT_VALIDATION, message.into())
    }

    pub fn io(message: String) -> Self {
        Self::new("IO_ERROR", EXIT_VALIDATION, message)
    }

    pub fn sweep_failures() -> Self {
        Self::new(
            "SWEEP_FAILURES",
            EXIT_VALIDATION,
            "sweep found failing instances (see report)".to_string(),
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "code": self.code, "message": self.message }).to_string()
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        let message = e.to_string();
        match e {
            JsonError::Syntax(_) | JsonError::BadFraction(_) => {
                Self::new("PARSE_ERROR", EXIT_VALIDATION, message)
            }
            JsonError::Dist(d) => d.into(),
        }
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> Self {
        let message = e.to_string();
        match e {
            DistError::DuplicateValue(_) => Self::new("DUPLICATE_VALUE", EXIT_VALIDATION, message),
            DistError::BadMass(_) => Self::new("BAD_MASS", EXIT_VALIDATION, message),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let message = e.to_string();
        match e {
            OracleError::TooLarge { .. } => Self::new("TOO_LARGE", EXIT_BUDGET, message),
            OracleError::BadMultiset(_) => Self::new("BAD_MASS", EXIT_VALIDATION, message),
            OracleError::WindowTooSmall { .. } => {
                Self::new("WINDOW_TOO_SMALL", EXIT_VALIDATION, message)
            }
            OracleError::InexactFunction(_) => {
                Self::new("UNSUPPORTED_F", EXIT_VALIDATION, message)
            }
        }
    }
}

impl From<SumsError> for CliError {
    fn from(e: SumsError) -> Self {
        let message = e.to_string();
        match e {
            SumsError::ExactTooLarge { .. } => Self::new("EXACT_TOO_LARGE", EXIT_BUDGET, message),
            SumsError::TooManyPatterns { .. } => {
                Self::new("TOO_MANY_PATTERNS", EXIT_BUDGET, message)
            }
            SumsError::DegenerateLattice { .. } => {
                Self::new("DEGENERATE_LATTICE", EXIT_VALIDATION, message)
            }
            SumsError::EmptyInput => Self::new("EMPTY_INPUT", EXIT_VALIDATION, message),
        }
    }
}
