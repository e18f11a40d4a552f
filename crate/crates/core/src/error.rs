use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorial of negative integer {0}")]
    InvalidFactorialArgument(String),
    #[error("({sin}, {cos}) is not on the unit circle")]
    NotOnUnitCircle { sin: String, cos: String },
    #[error("invalid highest weight: {0}")]
    InvalidWeight(String),
    #[error("series does not terminate within {0} terms")]
    NonTerminating(usize),
    #[error("denominator vanishes at term {0} before the series terminates")]
    DenominatorPoleBeforeTermination(usize),
    #[error("tangent pole: cos = 0")]
    TanPole,
    #[error("entry ({0}, {1}) retains an unresolved square root")]
    NonCancellingNorms(usize, usize),
    #[error("weight {0} is not a symmetric representation")]
    NotSymmetricRep(String),
    #[error("not a rotation: {0}")]
    NotARotation(String),
    #[error("neither sign of tau matches the oracle for weight {0}")]
    SignCalibrationFailed(String),
    #[error("exact evaluation requires exact angles")]
    InexactAngle,
    #[error("expected an integer, got {0}")]
    NotInteger(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
