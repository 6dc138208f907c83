//! Machine-readable error objects and exit codes.

use germlab_core::invariants::InvariantError;
use germlab_core::{EquisingError, GermError, LocalError, MultipointError};
use serde_json::{json, Value};

/// Input or usage problem.
pub const EXIT_INPUT: i32 = 1;
/// Mathematical inconsistency: a violated identity or a non-integral result.
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    pub fn input(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into(), exit: EXIT_INPUT }
    }

    pub fn to_json(&self) -> Value {
        json!({ "code": self.code, "message": self.message })
    }
}

impl From<GermError> for CliError {
    fn from(e: GermError) -> Self {
        let code = match e {
            GermError::ZeroSourceDimension => "ZERO_SOURCE_DIMENSION",
            GermError::NoBranches => "NO_BRANCHES",
            GermError::WrongComponentCount { .. } => "WRONG_COMPONENT_COUNT",
            GermError::NormalFormViolation { .. } => "NORMAL_FORM_VIOLATION",
            GermError::NotVanishing { .. } => "NOT_VANISHING",
            GermError::Parse { .. } => "PARSE_ERROR",
            GermError::ParameterClash(_) => "PARAMETER_CLASH",
            GermError::ParameterCount(_) => "PARAMETER_COUNT",
            GermError::Poly(_) => "POLYNOMIAL_ERROR",
        };
        CliError::input(code, e.to_string())
    }
}

fn local_code(e: &LocalError) -> &'static str {
    match e {
        LocalError::CapExceeded { .. } => "DEGREE_CAP_EXCEEDED",
        LocalError::CoefficientLimit { .. } => "COEFFICIENT_LIMIT_EXCEEDED",
        LocalError::EmptyGerm => "EMPTY_GERM",
        LocalError::NotIsolated(_) => "NOT_ISOLATED",
        LocalError::Poly(_) => "POLYNOMIAL_ERROR",
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        let (code, exit) = match &e {
            InvariantError::NotAFiniteOrBug(_) => ("NOT_A_FINITE", EXIT_INPUT),
            InvariantError::NonIntegerResult { .. } => ("NON_INTEGER_RESULT", EXIT_INCONSISTENT),
            InvariantError::NonIntegerOrbitCount { .. } => ("NON_INTEGER_ORBIT_COUNT", EXIT_INCONSISTENT),
            InvariantError::HoustonSumViolation { .. } => ("HOUSTON_SUM_VIOLATION", EXIT_INCONSISTENT),
            InvariantError::CheckFailed(_) => ("CHECK_FAILED", EXIT_INCONSISTENT),
            InvariantError::UnsupportedDimension(..) => ("UNSUPPORTED_DIMENSION", EXIT_INPUT),
            InvariantError::Multipoint(MultipointError::Local(l)) => (local_code(l), EXIT_INPUT),
            InvariantError::Multipoint(_) => ("MULTIPLE_POINT_ERROR", EXIT_INPUT),
            InvariantError::Symrep(_) => ("SYMMETRIC_GROUP_ERROR", EXIT_INCONSISTENT),
        };
        CliError { code, message: e.to_string(), exit }
    }
}

impl From<MultipointError> for CliError {
    fn from(e: MultipointError) -> Self {
        InvariantError::from(e).into()
    }
}

impl From<EquisingError> for CliError {
    fn from(e: EquisingError) -> Self {
        let code = match e {
            EquisingError::Invariant(inner) => return inner.into(),
            EquisingError::Germ(inner) => return inner.into(),
            EquisingError::TooSmall(_) => "SOURCE_TOO_SMALL",
            EquisingError::LevelOutOfRange { .. } => "LEVEL_OUT_OF_RANGE",
            EquisingError::DegenerateForm { .. } => "DEGENERATE_FORM",
            EquisingError::NotTransverse { .. } => "NOT_TRANSVERSE",
            EquisingError::TruncationUnstable { .. } => "TRUNCATION_UNSTABLE",
            EquisingError::UnstableGenericMember { .. } => "UNSTABLE_GENERIC_MEMBER",
            EquisingError::Poly(_) => "POLYNOMIAL_ERROR",
        };
        CliError::input(code, e.to_string())
    }
}
