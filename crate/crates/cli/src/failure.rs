//! Failures and their exit statuses.

use std::fmt;

use unitlab::arith::ArithError;
use unitlab::cover::CoverError;
use unitlab::degeneracy::DegeneracyError;
use unitlab::equation::EquationError;
use unitlab::lattice::LatticeError;
use unitlab::lower_bound::LowerBoundError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable or invalid input.
    Input(String),
    /// A property that must hold did not.
    Verification(String),
    /// A search hit its budget or box.
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    pub fn missing(field: &str) -> Self {
        Failure::Input(format!("missing field `{field}`"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Budget(m) => write!(f, "budget exhausted: {m}"),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Input(format!("LatticeError::{e:?}"))
    }
}

impl From<ArithError> for Failure {
    fn from(e: ArithError) -> Self {
        Failure::Input(format!("ArithError::{e:?}"))
    }
}

impl From<EquationError> for Failure {
    fn from(e: EquationError) -> Self {
        let m = format!("EquationError::{e:?}");
        match e {
            EquationError::BudgetExceeded { .. } => Failure::Budget(m),
            _ => Failure::Input(m),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        let m = format!("CoverError::{e:?}");
        match e {
            CoverError::BudgetExceeded { .. } | CoverError::LimitExceeded { .. } => Failure::Budget(m),
            _ => Failure::Input(m),
        }
    }
}

impl From<DegeneracyError> for Failure {
    fn from(e: DegeneracyError) -> Self {
        let m = format!("DegeneracyError::{e:?}");
        match e {
            DegeneracyError::BudgetExceeded { .. } => Failure::Budget(m),
            DegeneracyError::IdentityFailed { .. } | DegeneracyError::ZeroNormal { .. } => Failure::Verification(m),
            _ => Failure::Input(m),
        }
    }
}

impl From<LowerBoundError> for Failure {
    fn from(e: LowerBoundError) -> Self {
        let m = format!("LowerBoundError::{e:?}");
        match e {
            LowerBoundError::BudgetExceeded { .. } | LowerBoundError::NotFound { .. } => Failure::Budget(m),
            _ => Failure::Input(m),
        }
    }
}
