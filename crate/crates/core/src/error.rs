//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid base field: {0}")]
    InvalidField(String),
    #[error("division by zero in the base field")]
    DivisionByZero,
    #[error("cannot parse coefficient {0:?}")]
    BadCoefficient(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("quotient is not finite-dimensional: variable {0:?} has no pure power in the ideal")]
    NotArtinian(String),
    #[error("element does not belong to this ring")]
    RingMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("{0} is not invertible in the coefficient ring")]
    ExponentNotInvertible(u32),
    #[error("root0^r = {0} does not match the constant term {1}")]
    RootMismatch(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("nodal algebra mismatch")]
    AlgebraMismatch,
    #[error("p*q != pi in the nodal algebra")]
    BadModuleData,
    #[error("twist data invalid: {0}")]
    BadTwist(String),
    #[error("residue of b_0 or b_r is not of the form x^u(unit) / y^v(unit): {0}")]
    BadResidueShape(String),
    #[error("coefficient b_{{0,u}} or b_{{r,-v}} is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("the two modules live over different pi")]
    PiMismatch,
    #[error("p and q must lie in the maximal ideal")]
    NotInMaximalIdeal,
    #[error("invalid stable graph: {0}")]
    InvalidGraph(String),
    #[error("invalid spin type: {0}")]
    InvalidSpinType(String),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(i64),
    #[error("missing coefficient for component {0}")]
    MissingCoefficient(String),
    #[error("divisor class is not an r-th power: {0}")]
    CongruenceFailure(String),
    #[error("inconsistent limit data: {0}")]
    InconsistentLimit(String),
    #[error("bad input: {0}")]
    BadInput(String),
}
