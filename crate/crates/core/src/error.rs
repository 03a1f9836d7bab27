use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic routines.
///
/// Mathematical verdicts ("not trivializable", "no coboundary found") are
/// ordinary return values; these variants signal misuse or exhausted budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must live on the same group do not.
    GroupMismatch,
    /// Moduli that must agree (or divide each other) do not.
    ModulusMismatch { left: u64, right: u64 },
    /// A cochain degree outside the supported range.
    DegreeOutOfRange(usize),
    /// Invalid construction data (bad invariant factors, wrong table length, ...).
    InvalidInput(String),
    /// A cochain table has a nonzero entry where an argument is the identity.
    NotNormalized,
    /// An operation required a cocycle.
    NotCocycle,
    /// A structural invariant failed to hold on data that was supposed to satisfy it.
    InvariantViolation(String),
    /// The requested computation exceeds the configured size budget.
    BudgetExceeded(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GroupMismatch => write!(f, "group mismatch"),
            Error::ModulusMismatch { left, right } => {
                write!(f, "incompatible moduli {left} and {right}")
            }
            Error::DegreeOutOfRange(k) => write!(f, "cochain degree {k} out of range"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NotNormalized => write!(f, "cochain is not normalized"),
            Error::NotCocycle => write!(f, "cochain is not a cocycle"),
            Error::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
            Error::BudgetExceeded(msg) => write!(f, "budget exceeded: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
