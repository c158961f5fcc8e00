use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different ring presentations")]
    PresentationMismatch,
    #[error("operands use different coefficient rings ({0} vs {1})")]
    CoefficientMismatch(&'static str, &'static str),
    #[error("total class must have leading term 1")]
    NonUnitLeading,
    #[error("generator {name} has degree {expected} but its image is not homogeneous of that degree")]
    DegreeViolation { name: String, expected: u32 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no Sq^1 action is declared for this ring")]
    NoSquareAction,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
